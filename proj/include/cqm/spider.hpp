#pragma once

// A term language for diagrams built from a single classical structure:
// parsing, typing, evaluation to matrices, and normalisation of each
// connected piece to a spider.
//
// Grammar (';' binds loosest and composes in diagrammatic order):
//   seq  := par (';' par)*
//   par  := atom ('*' atom)*
//   atom := DELTA | NABLA | TOP | BOT | ID | SIGMA | '(' seq ')'

#include <cstddef>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cqm/core.hpp"
#include "cqm/error.hpp"
#include "cqm/structures.hpp"

namespace cqm {

struct SourcePos {
    std::size_t line = 0;
    std::size_t column = 0;
};

/// SyntaxError and TypeError, both carrying a 1-based source position
/// (0 when the term was built programmatically).
class TermError : public Error {
public:
    TermError(ErrorCode code, SourcePos pos, const std::string& what);

    std::size_t line() const noexcept { return pos_.line; }
    std::size_t column() const noexcept { return pos_.column; }

private:
    SourcePos pos_;
};

class Term {
public:
    enum class Kind { delta, nabla, top, bot, id, sigma, compose, tensor };

    static Term generator(Kind kind, SourcePos pos = {});
    /// COMPOSE(g, f) = g o f, written "f ; g".
    static Term compose(Term g, Term f, SourcePos pos = {});
    static Term tensor(Term left, Term right, SourcePos pos = {});

    Kind kind() const { return kind_; }
    bool is_generator() const { return kind_ != Kind::compose && kind_ != Kind::tensor; }
    /// For COMPOSE(g, f): left() = g, right() = f. For tensors, the factors.
    const Term& left() const { return *left_; }
    const Term& right() const { return *right_; }
    SourcePos pos() const { return pos_; }

    /// Structural equality; positions are ignored.
    friend bool operator==(const Term& a, const Term& b);

private:
    Term(Kind kind, std::shared_ptr<const Term> l, std::shared_ptr<const Term> r, SourcePos pos);

    Kind kind_;
    std::shared_ptr<const Term> left_;
    std::shared_ptr<const Term> right_;
    SourcePos pos_;
};

/// Throws TermError with ErrorCode::syntax_error.
Term parse(std::string_view text);

/// Text that parses back to the same term.
std::string to_text(const Term& t);
/// Constructor notation, e.g. "COMPOSE(NABLA, DELTA)".
std::string to_ast_string(const Term& t);

/// Number of generator leaves.
std::size_t generator_count(const Term& t);

/// (inputs, outputs). Throws TermError with ErrorCode::type_error at the
/// first ill-typed composite.
std::pair<std::size_t, std::size_t> typecheck(const Term& t);

/// The matrix of t over cs, with loops valued as top o bot.
Mor eval(const Term& t, const ClassicalStructure& cs);

/// A connected piece of the diagram and the boundary positions it touches.
/// Positions are 0-based, numbered left to right.
struct SpiderComponent {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<std::size_t> inputs;
    std::vector<std::size_t> outputs;

    friend bool operator==(const SpiderComponent&, const SpiderComponent&) = default;
};

/// Components ordered by their first input, then by their first output;
/// closed components come last.
struct NormalForm {
    std::size_t inputs = 0;
    std::size_t outputs = 0;
    std::vector<SpiderComponent> components;

    friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

/// Union-find over the generators of t: each generator is a vertex, and each
/// wire joins the two vertices at its ends (ID and SIGMA are bare wires).
NormalForm connected_components(const Term& t);

/// connected_components after typechecking.
NormalForm normalize(const Term& t);

/// Input permutation ; tensor of spiders ; output permutation. A spider is a
/// nabla tree followed by a delta tree; Spider(0, 0) is "BOT ; TOP".
Term to_term(const NormalForm& nf);

/// A random well-typed term with at most `max_generators` leaves and at
/// most `max_width` wires between layers.
Term random_term(std::mt19937_64& rng, std::size_t max_generators = 8, std::size_t max_width = 4);
/// Rejection-samples random_term until the result has one component.
Term random_connected_term(std::mt19937_64& rng, std::size_t max_generators = 8, std::size_t max_width = 4);

}  // namespace cqm
