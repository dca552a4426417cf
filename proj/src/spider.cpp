#include "cqm/spider.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <numeric>
#include <tuple>

namespace cqm {
namespace {

std::string format_pos(SourcePos pos) {
    if (pos.line == 0) return "";
    return " at line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column);
}

struct GenInfo {
    Term::Kind kind;
    const char* name;
    std::size_t in;
    std::size_t out;
};

constexpr std::array<GenInfo, 6> kGenerators{{
    {Term::Kind::delta, "DELTA", 1, 2},
    {Term::Kind::nabla, "NABLA", 2, 1},
    {Term::Kind::top, "TOP", 1, 0},
    {Term::Kind::bot, "BOT", 0, 1},
    {Term::Kind::id, "ID", 1, 1},
    {Term::Kind::sigma, "SIGMA", 2, 2},
}};

const GenInfo& info(Term::Kind k) {
    for (const GenInfo& g : kGenerators) {
        if (g.kind == k) return g;
    }
    throw Error(ErrorCode::invalid_input, "not a generator");
}

// ---------------------------------------------------------------------------
// Lexer and parser.

enum class Tok { name, semi, star, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;
    SourcePos pos;
};

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < text.size();) {
        const char c = text[i];
        const SourcePos here{line, col};
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
            ++col;
            ++i;
        } else if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) != 0 || text[j] == '_')) ++j;
            out.push_back({Tok::name, std::string(text.substr(i, j - i)), here});
            col += j - i;
            i = j;
        } else {
            Tok k;
            switch (c) {
                case ';': k = Tok::semi; break;
                case '*': k = Tok::star; break;
                case '(': k = Tok::lparen; break;
                case ')': k = Tok::rparen; break;
                default:
                    throw TermError(ErrorCode::syntax_error, here, std::string("unexpected character '") + c + "'");
            }
            out.push_back({k, std::string(1, c), here});
            ++col;
            ++i;
        }
    }
    out.push_back({Tok::end, "", SourcePos{line, col}});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Term parse_all() {
        Term t = seq();
        if (peek().kind != Tok::end) fail("expected ';', '*' or end of input");
        return t;
    }

private:
    const Token& peek() const { return toks_[at_]; }
    const Token& next() { return toks_[at_++]; }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        const std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
        throw TermError(ErrorCode::syntax_error, t.pos, msg + ", found " + found);
    }

    Term seq() {
        Term t = par();
        while (peek().kind == Tok::semi) {
            const SourcePos pos = next().pos;
            Term rhs = par();
            t = Term::compose(std::move(rhs), std::move(t), pos);
        }
        return t;
    }

    Term par() {
        Term t = atom();
        while (peek().kind == Tok::star) {
            const SourcePos pos = next().pos;
            Term rhs = atom();
            t = Term::tensor(std::move(t), std::move(rhs), pos);
        }
        return t;
    }

    Term atom() {
        const Token& t = peek();
        if (t.kind == Tok::lparen) {
            next();
            Term inner = seq();
            if (peek().kind != Tok::rparen) fail("expected ')'");
            next();
            return inner;
        }
        if (t.kind == Tok::name) {
            for (const GenInfo& g : kGenerators) {
                if (t.text == g.name) {
                    next();
                    return Term::generator(g.kind, t.pos);
                }
            }
            throw TermError(ErrorCode::syntax_error, t.pos, "unknown generator '" + t.text + "'");
        }
        fail("expected a generator or '('");
    }

    std::vector<Token> toks_;
    std::size_t at_ = 0;
};

// ---------------------------------------------------------------------------
// Components.

class UnionFind {
public:
    std::size_t add() {
        parent_.push_back(parent_.size());
        return parent_.size() - 1;
    }
    std::size_t find(std::size_t v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }
    std::size_t size() const { return parent_.size(); }

private:
    std::vector<std::size_t> parent_;
};

struct Fragment {
    std::vector<std::size_t> in;
    std::vector<std::size_t> out;
};

Fragment build(const Term& t, UnionFind& uf) {
    switch (t.kind()) {
        case Term::Kind::delta: {
            const std::size_t v = uf.add();
            return {{v}, {v, v}};
        }
        case Term::Kind::nabla: {
            const std::size_t v = uf.add();
            return {{v, v}, {v}};
        }
        case Term::Kind::top: return {{uf.add()}, {}};
        case Term::Kind::bot: return {{}, {uf.add()}};
        case Term::Kind::id: {
            const std::size_t v = uf.add();
            return {{v}, {v}};
        }
        case Term::Kind::sigma: {
            const std::size_t a = uf.add(), b = uf.add();
            return {{a, b}, {b, a}};
        }
        case Term::Kind::compose: {
            Fragment f = build(t.right(), uf);
            Fragment g = build(t.left(), uf);
            if (f.out.size() != g.in.size()) {
                throw TermError(ErrorCode::type_error, t.pos(), "composite of mismatched wire counts");
            }
            for (std::size_t i = 0; i < f.out.size(); ++i) uf.unite(f.out[i], g.in[i]);
            return {std::move(f.in), std::move(g.out)};
        }
        case Term::Kind::tensor: {
            Fragment a = build(t.left(), uf);
            Fragment b = build(t.right(), uf);
            a.in.insert(a.in.end(), b.in.begin(), b.in.end());
            a.out.insert(a.out.end(), b.out.begin(), b.out.end());
            return a;
        }
    }
    throw Error(ErrorCode::invalid_input, "unknown term kind");
}

// ---------------------------------------------------------------------------
// Canonical terms.

Term gen(Term::Kind k) { return Term::generator(k); }

Term tensor_all(std::vector<Term> parts) {
    Term t = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) t = Term::tensor(t, parts[i]);
    return t;
}

// Diagrammatic sequence: parts[0] first.
Term chain(const std::vector<Term>& parts) {
    Term t = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) t = Term::compose(parts[i], t);
    return t;
}

// `head` beside ID^k.
Term padded(const Term& head, std::size_t k) {
    std::vector<Term> parts{head};
    for (std::size_t i = 0; i < k; ++i) parts.push_back(gen(Term::Kind::id));
    return tensor_all(parts);
}

Term swap_layer(std::size_t width, std::size_t at) {
    std::vector<Term> parts;
    for (std::size_t i = 0; i < at; ++i) parts.push_back(gen(Term::Kind::id));
    parts.push_back(gen(Term::Kind::sigma));
    for (std::size_t i = at + 2; i < width; ++i) parts.push_back(gen(Term::Kind::id));
    return tensor_all(parts);
}

// Adjacent swaps that sort `keys` ascending; slot i initially holds keys[i].
std::vector<Term> sorting_layers(std::vector<std::size_t> keys) {
    std::vector<Term> layers;
    const std::size_t n = keys.size();
    for (std::size_t pass = 0; pass + 1 < n; ++pass) {
        for (std::size_t i = 0; i + 1 < n - pass; ++i) {
            if (keys[i] > keys[i + 1]) {
                std::swap(keys[i], keys[i + 1]);
                layers.push_back(swap_layer(n, i));
            }
        }
    }
    return layers;
}

Term spider_term(std::size_t n, std::size_t m) {
    std::vector<Term> parts;
    if (n == 0) parts.push_back(gen(Term::Kind::bot));
    for (std::size_t k = n; k >= 2; --k) parts.push_back(padded(gen(Term::Kind::nabla), k - 2));
    if (m == 0) parts.push_back(gen(Term::Kind::top));
    for (std::size_t k = 1; k + 1 <= m; ++k) parts.push_back(padded(gen(Term::Kind::delta), k - 1));
    if (parts.empty()) parts.push_back(gen(Term::Kind::id));
    return chain(parts);
}

}  // namespace

TermError::TermError(ErrorCode code, SourcePos pos, const std::string& what)
    : Error(code, what + format_pos(pos)), pos_(pos) {}

Term::Term(Kind kind, std::shared_ptr<const Term> l, std::shared_ptr<const Term> r, SourcePos pos)
    : kind_(kind), left_(std::move(l)), right_(std::move(r)), pos_(pos) {}

Term Term::generator(Kind kind, SourcePos pos) {
    if (kind == Kind::compose || kind == Kind::tensor) {
        throw Error(ErrorCode::invalid_input, "composite kinds need operands");
    }
    return Term(kind, nullptr, nullptr, pos);
}

Term Term::compose(Term g, Term f, SourcePos pos) {
    return Term(Kind::compose, std::make_shared<const Term>(std::move(g)), std::make_shared<const Term>(std::move(f)),
                pos);
}

Term Term::tensor(Term left, Term right, SourcePos pos) {
    return Term(Kind::tensor, std::make_shared<const Term>(std::move(left)),
                std::make_shared<const Term>(std::move(right)), pos);
}

bool operator==(const Term& a, const Term& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.is_generator()) return true;
    return *a.left_ == *b.left_ && *a.right_ == *b.right_;
}

Term parse(std::string_view text) { return Parser(lex(text)).parse_all(); }

std::string to_text(const Term& t) {
    switch (t.kind()) {
        case Term::Kind::compose: return "(" + to_text(t.right()) + " ; " + to_text(t.left()) + ")";
        case Term::Kind::tensor: return "(" + to_text(t.left()) + " * " + to_text(t.right()) + ")";
        default: return info(t.kind()).name;
    }
}

std::string to_ast_string(const Term& t) {
    switch (t.kind()) {
        case Term::Kind::compose: return "COMPOSE(" + to_ast_string(t.left()) + ", " + to_ast_string(t.right()) + ")";
        case Term::Kind::tensor: return "TENSOR(" + to_ast_string(t.left()) + ", " + to_ast_string(t.right()) + ")";
        default: return info(t.kind()).name;
    }
}

std::size_t generator_count(const Term& t) {
    if (t.is_generator()) return 1;
    return generator_count(t.left()) + generator_count(t.right());
}

std::pair<std::size_t, std::size_t> typecheck(const Term& t) {
    switch (t.kind()) {
        case Term::Kind::compose: {
            const auto f = typecheck(t.right());
            const auto g = typecheck(t.left());
            if (f.second != g.first) {
                throw TermError(ErrorCode::type_error, t.pos(),
                                "cannot feed " + std::to_string(f.second) + " wires into a term expecting " +
                                    std::to_string(g.first));
            }
            return {f.first, g.second};
        }
        case Term::Kind::tensor: {
            const auto a = typecheck(t.left());
            const auto b = typecheck(t.right());
            return {a.first + b.first, a.second + b.second};
        }
        default: {
            const GenInfo& g = info(t.kind());
            return {g.in, g.out};
        }
    }
}

namespace {

Mor eval_typed(const Term& t, const ClassicalStructure& cs) {
    const Obj& x = cs.object();
    const SemiringKind k = cs.kind();
    switch (t.kind()) {
        case Term::Kind::delta: return cs.delta();
        case Term::Kind::nabla: return cs.nabla();
        case Term::Kind::top: return cs.top();
        case Term::Kind::bot: return cs.bot();
        case Term::Kind::id: return identity(x, k);
        case Term::Kind::sigma: return symmetry(x, x, k);
        case Term::Kind::compose: return compose(eval_typed(t.left(), cs), eval_typed(t.right(), cs));
        case Term::Kind::tensor: return tensor(eval_typed(t.left(), cs), eval_typed(t.right(), cs));
    }
    throw Error(ErrorCode::invalid_input, "unknown term kind");
}

}  // namespace

Mor eval(const Term& t, const ClassicalStructure& cs) {
    typecheck(t);
    return eval_typed(t, cs);
}

NormalForm connected_components(const Term& t) {
    UnionFind uf;
    const Fragment fr = build(t, uf);
    NormalForm nf;
    nf.inputs = fr.in.size();
    nf.outputs = fr.out.size();

    std::map<std::size_t, std::size_t> by_root;
    const auto component = [&](std::size_t vertex) -> SpiderComponent& {
        const std::size_t root = uf.find(vertex);
        auto [it, fresh] = by_root.try_emplace(root, nf.components.size());
        if (fresh) nf.components.emplace_back();
        return nf.components[it->second];
    };
    for (std::size_t i = 0; i < fr.in.size(); ++i) component(fr.in[i]).inputs.push_back(i);
    for (std::size_t j = 0; j < fr.out.size(); ++j) component(fr.out[j]).outputs.push_back(j);
    for (std::size_t v = 0; v < uf.size(); ++v) component(v);
    for (SpiderComponent& c : nf.components) {
        c.n = c.inputs.size();
        c.m = c.outputs.size();
    }
    // Inputs-first ordering; creation order breaks ties between closed pieces.
    std::vector<std::size_t> order(nf.components.size());
    std::iota(order.begin(), order.end(), 0);
    const auto key = [&](std::size_t i) {
        const SpiderComponent& c = nf.components[i];
        if (!c.inputs.empty()) return std::make_tuple(0, c.inputs.front(), i);
        if (!c.outputs.empty()) return std::make_tuple(1, c.outputs.front(), i);
        return std::make_tuple(2, std::size_t{0}, i);
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    std::vector<SpiderComponent> sorted;
    sorted.reserve(order.size());
    for (std::size_t i : order) sorted.push_back(std::move(nf.components[i]));
    nf.components = std::move(sorted);
    return nf;
}

NormalForm normalize(const Term& t) {
    typecheck(t);
    return connected_components(t);
}

Term to_term(const NormalForm& nf) {
    if (nf.components.empty()) throw Error(ErrorCode::invalid_input, "normal form without components");
    std::vector<std::size_t> in_target(nf.inputs), out_keys;
    std::size_t slot = 0;
    std::vector<Term> spiders;
    for (const SpiderComponent& c : nf.components) {
        for (std::size_t p : c.inputs) in_target.at(p) = slot++;
        out_keys.insert(out_keys.end(), c.outputs.begin(), c.outputs.end());
        spiders.push_back(spider_term(c.n, c.m));
    }
    std::vector<Term> parts = sorting_layers(in_target);
    parts.push_back(tensor_all(spiders));
    for (Term& layer : sorting_layers(out_keys)) parts.push_back(std::move(layer));
    return chain(parts);
}

Term random_term(std::mt19937_64& rng, std::size_t max_generators, std::size_t max_width) {
    if (max_generators == 0 || max_width == 0) {
        throw Error(ErrorCode::invalid_input, "random terms need a positive budget and width");
    }
    const auto roll = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    std::size_t budget = max_generators;
    std::size_t width = roll(0, std::min<std::size_t>(3, max_width));
    std::vector<Term> layers;
    for (int attempt = 0; attempt < 64 && budget > 0; ++attempt) {
        std::vector<Term> leaves;
        std::size_t remaining = width, out = 0;
        if (remaining == 0) {
            const std::size_t bots = roll(1, std::min<std::size_t>(2, max_width));
            for (std::size_t i = 0; i < bots; ++i) leaves.push_back(gen(Term::Kind::bot));
            out = bots;
        }
        bool bot_used = false;
        while (remaining > 0) {
            if (!bot_used && out + 1 <= max_width && roll(0, 7) == 0) {
                leaves.push_back(gen(Term::Kind::bot));
                ++out;
                bot_used = true;
                continue;
            }
            std::vector<const GenInfo*> options;
            for (const GenInfo& g : kGenerators) {
                if (g.in == 0 || g.in > remaining || out + g.out > max_width) continue;
                options.push_back(&g);
            }
            const GenInfo& g = *options[roll(0, options.size() - 1)];
            leaves.push_back(gen(g.kind));
            remaining -= g.in;
            out += g.out;
        }
        if (leaves.size() > budget) {
            if (!layers.empty()) break;
            continue;
        }
        budget -= leaves.size();
        layers.push_back(tensor_all(std::move(leaves)));
        width = out;
        if (roll(0, 9) == 0) break;
    }
    if (layers.empty()) return gen(Term::Kind::id);
    return chain(layers);
}

Term random_connected_term(std::mt19937_64& rng, std::size_t max_generators, std::size_t max_width) {
    for (;;) {
        Term t = random_term(rng, max_generators, max_width);
        if (connected_components(t).components.size() == 1) return t;
    }
}

}  // namespace cqm
