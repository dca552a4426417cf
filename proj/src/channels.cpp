#include "cqm/channels.hpp"

#include <array>

#include "cqm/classify.hpp"
#include "cqm/kleisli.hpp"

namespace cqm {

namespace {

void require_type(const Mor& f, const Obj& dom, const Obj& cod, const char* what) {
    if (!(f.dom() == dom) || !(f.cod() == cod)) {
        throw Error(ErrorCode::dim_mismatch, std::string(what) + ": expected " + dom.str() + " -> " +
                                                 cod.str() + ", got " + f.dom().str() + " -> " +
                                                 f.cod().str());
    }
}

// The factors of `whole` after a prefix `head`; throws DimMismatch if `whole`
// does not start with `head`.
Obj strip_prefix(const Obj& whole, const Obj& head, const char* what) {
    const std::size_t n = head.size();
    if (whole.size() < n || !(whole.slice(0, n) == head)) {
        throw Error(ErrorCode::dim_mismatch,
                    std::string(what) + ": " + whole.str() + " does not start with " + head.str());
    }
    return whole.slice(n, whole.size() - n);
}

// A* (x) m (x) A.
Mor sandwich(const Obj& astar, const Mor& m, const Obj& a) {
    return tensor({identity(astar, m.kind()), m, identity(a, m.kind())});
}

}  // namespace

Mor w_pure(const Mor& phi, const CompactStructure& ca, const CompactStructure& cb) {
    require_type(phi, ca.a, cb.a, "pure operation");
    return tensor(conjugate_of(phi, ca, cb), phi);
}

Mor w_pure(const Mor& phi) {
    return w_pure(phi, CompactStructure::standard(phi.dom(), phi.kind()),
                  CompactStructure::standard(phi.cod(), phi.kind()));
}

Mor w_pure_controlled(const Mor& phi, const ClassicalStructure& cs, const CompactStructure& ca,
                      const CompactStructure& cb) {
    require_type(phi, cs.object() * ca.a, cb.a, "controlled pure operation");
    const CompactStructure cxa = compact_tensor(bell_from_classical(cs), ca);
    const Mor conj = conjugate_of(phi, cxa, cb);  // A* X -> B*
    return compose(tensor(conj, phi), sandwich(ca.astar, cs.delta(), ca.a));
}

Mor w_pure_controlled(const Mor& phi, const ClassicalStructure& cs) {
    const Obj a = strip_prefix(phi.dom(), cs.object(), "controlled pure operation");
    return w_pure_controlled(phi, cs, CompactStructure::standard(a, phi.kind()),
                             CompactStructure::standard(phi.cod(), phi.kind()));
}

Mor p_controlled(const Mor& phi, const ClassicalStructure& cs, const Obj& ancilla,
                 const CompactStructure& ca, const CompactStructure& cb) {
    require_type(phi, cs.object() * ca.a, ancilla * cb.a, "controlled mixed operation");
    const CompactStructure cv = CompactStructure::standard(ancilla, phi.kind());
    const CompactStructure cxa = compact_tensor(bell_from_classical(cs), ca);
    const CompactStructure cvb = compact_tensor(cv, cb);
    const Mor conj = conjugate_of(phi, cxa, cvb);  // A* X -> B* V*
    const Mor pure = compose(tensor(conj, phi), sandwich(ca.astar, cs.delta(), ca.a));
    return compose_at(dual(cv).eps, pure, cb.astar.size());
}

Mor p_controlled(const Mor& phi, const ClassicalStructure& cs, const Obj& ancilla) {
    const Obj a = strip_prefix(phi.dom(), cs.object(), "controlled mixed operation");
    const Obj b = strip_prefix(phi.cod(), ancilla, "controlled mixed operation");
    return p_controlled(phi, cs, ancilla, CompactStructure::standard(a, phi.kind()),
                        CompactStructure::standard(b, phi.kind()));
}

Measurement Measurement::make(ClassicalStructure cs, Mor pi, double tol) {
    if (!is_measurement(pi, cs, tol)) {
        throw Error(ErrorCode::axiom_failure, "pi is not an Eilenberg-Moore coalgebra");
    }
    Obj a = pi.dom();
    return Measurement{std::move(cs), std::move(a), std::move(pi)};
}

Measurement canonical_measurement(const ClassicalStructure& cs) {
    return Measurement{cs, cs.object(), cs.delta()};
}

AxiomReport measurement_report(const Mor& pi, const ClassicalStructure& cs, double tol) {
    const Obj& a = pi.dom();
    const Obj& x = cs.object();
    require_type(pi, a, x * a, "measurement");
    const SemiringKind k = pi.kind();
    const Mor id_a = identity(a, k);
    const Mor id_x = identity(x, k);
    const Mor eps = compose(cs.top(), cs.nabla());

    AxiomReport report;
    const Mor transposed = compose(tensor(eps, id_a), tensor(id_x, pi));
    report.add_equation("self_adjoint", dagger(pi), transposed, tol);
    report.add_equation("coassociative", compose(tensor(cs.delta(), id_a), pi),
                        compose(tensor(id_x, pi), pi), tol);
    report.add_equation("counital", compose(tensor(cs.top(), id_a), pi), id_a, tol);

    const KMor pk = from_cokleisli(CoKMor(cs, a, a, pi));
    report.add_equation("spectral_sum", ksum(pk), id_a, tol);
    report.add_equation("spectral_orthogonal", compose(pk.mor(), tensor(id_x, pk.mor())),
                        compose(pk.mor(), tensor(cs.nabla(), id_a)), tol);
    report.add_equation("spectral_self_adjoint", kdagger(pk).mor(), pk.mor(), tol);
    return report;
}

bool is_measurement(const Mor& pi, const ClassicalStructure& cs, double tol) {
    const AxiomReport r = measurement_report(pi, cs, tol);
    return r.passed("self_adjoint") && r.passed("coassociative") && r.passed("counital");
}

Mor controlled_measurement(const Mor& pi, const ClassicalStructure& x, const ClassicalStructure& y,
                           const CompactStructure& ca, const CompactStructure& cb) {
    require_type(pi, x.object() * ca.a, y.object() * cb.a, "controlled measurement");
    const CompactStructure cyb = compact_tensor(bell_from_classical(y), cb);
    const Mor w = w_pure_controlled(pi, x, ca, cyb);  // A* X A -> B* Y Y B
    return compose_at(y.nabla(), w, cb.astar.size());
}

Mor controlled_compose(const Mor& g, const Mor& f, const ClassicalStructure& cs, const Obj& a,
                       const Obj& b) {
    const Obj& x = cs.object();
    const SemiringKind k = cs.kind();
    require_type(f, a * x * a, b * b, "controlled composition");
    if (!(g.dom() == b * x * b)) {
        throw Error(ErrorCode::dim_mismatch, "controlled composition: expected domain " +
                                                 (b * x * b).str() + ", got " + g.dom().str());
    }
    Mor t = sandwich(a, cs.delta(), a);  // A* X X A
    const std::array<Obj, 4> in_blocks{a, x, x, a};
    const std::array<std::size_t, 4> in_order{1, 0, 2, 3};
    t = compose(block_permutation(in_blocks, in_order, k), t);  // X A* X A
    t = compose_at(f, t, x.size());                             // X B* B
    const std::array<Obj, 3> out_blocks{x, b, b};
    const std::array<std::size_t, 3> out_order{1, 0, 2};
    t = compose(block_permutation(out_blocks, out_order, k), t);  // B* X B
    return compose(g, t);
}

Mor controlled_identity(const ClassicalStructure& cs, const Obj& a) {
    return sandwich(a, cs.top(), a);
}

bool is_controlled_cp(const Mor& g, const ClassicalStructure& cs, const Obj& a, const Obj& b,
                      double tol) {
    const SemiringKind k = cs.kind();
    return is_cq(g, cs, ClassicalStructure::trivial(k), CompactStructure::standard(a, k),
                 CompactStructure::standard(b, k), tol);
}

Mor reindex(const Mor& phi, const Mor& g, const ClassicalStructure& x, const ClassicalStructure& y,
            const Obj& a, double tol) {
    require_type(phi, x.object(), y.object(), "reindexing map");
    if (!(g.dom() == a * y.object() * a)) {
        throw Error(ErrorCode::dim_mismatch, "reindexing: expected domain " +
                                                 (a * y.object() * a).str() + ", got " +
                                                 g.dom().str());
    }
    if (!is_classical_map(phi, x, y, tol)) {
        throw Error(ErrorCode::not_classical, "reindexing needs a classical map");
    }
    return compose(g, sandwich(a, phi, a));
}

SCMor::SCMor(SCObj dom, SCObj cod, Mor phi, Mor g, bool check, double tol)
    : dom_(std::move(dom)), cod_(std::move(cod)), phi_(std::move(phi)), g_(std::move(g)) {
    const Obj& x = dom_.x.object();
    require_type(phi_, x, cod_.x.object(), "SC classical component");
    require_type(g_, dom_.a * x * dom_.a, cod_.a * cod_.a, "SC quantum component");
    if (!check) return;
    if (!relation_flags(phi_, dom_.x, cod_.x, tol).is_function) {
        throw Error(ErrorCode::classification_failure, "SC classical component is not a function");
    }
    if (!is_controlled_cp(g_, dom_.x, dom_.a, cod_.a, tol)) {
        throw Error(ErrorCode::classification_failure,
                    "SC quantum component is not a controlled completely positive map");
    }
}

SCMor::SCMor(SCObj dom, SCObj cod, Mor phi, Mor g, double tol)
    : SCMor(std::move(dom), std::move(cod), std::move(phi), std::move(g), true, tol) {}

SCMor SCMor::unchecked(SCObj dom, SCObj cod, Mor phi, Mor g) {
    return SCMor(std::move(dom), std::move(cod), std::move(phi), std::move(g), false, 0.0);
}

SCMor sc_identity(const SCObj& obj) {
    return SCMor::unchecked(obj, obj, identity(obj.x.object(), obj.x.kind()),
                            controlled_identity(obj.x, obj.a));
}

SCMor sc_compose(const SCMor& n, const SCMor& m) {
    if (!(m.cod() == n.dom())) {
        throw Error(ErrorCode::type_mismatch, "SC composition: codomain <" +
                                                  m.cod().x.object().str() + ", " +
                                                  m.cod().a.str() + "> does not match domain <" +
                                                  n.dom().x.object().str() + ", " +
                                                  n.dom().a.str() + ">");
    }
    const SCObj& d = m.dom();
    const Mor pulled = reindex(m.phi(), n.g(), d.x, m.cod().x, m.cod().a);
    return SCMor::unchecked(d, n.cod(), compose(n.phi(), m.phi()),
                            controlled_compose(pulled, m.g(), d.x, d.a, m.cod().a));
}

SCMor sc_tensor(const SCMor& m1, const SCMor& m2) {
    const SemiringKind k = m1.dom().x.kind();
    const Obj& a1 = m1.dom().a;
    const Obj& a2 = m2.dom().a;
    const Obj& b1 = m1.cod().a;
    const Obj& b2 = m2.cod().a;
    const Obj& x1 = m1.dom().x.object();
    const Obj& x2 = m2.dom().x.object();
    const std::array<Obj, 6> in_blocks{a1, a2, x1, x2, a1, a2};
    const std::array<std::size_t, 6> in_order{0, 2, 4, 1, 3, 5};
    const std::array<Obj, 4> out_blocks{b1, b1, b2, b2};
    const std::array<std::size_t, 4> out_order{0, 2, 1, 3};
    const Mor g = compose(block_permutation(out_blocks, out_order, k),
                          compose(tensor(m1.g(), m2.g()), block_permutation(in_blocks, in_order, k)));
    SCObj dom{product_structure(m1.dom().x, m2.dom().x), a1 * a2};
    SCObj cod{product_structure(m1.cod().x, m2.cod().x), b1 * b2};
    return SCMor::unchecked(std::move(dom), std::move(cod), tensor(m1.phi(), m2.phi()), g);
}

SCMor sc_erasure(const SCObj& obj) {
    const SemiringKind k = obj.x.kind();
    return SCMor::unchecked(obj, SCObj{ClassicalStructure::trivial(k), obj.a}, obj.x.top(),
                            controlled_identity(obj.x, obj.a));
}

Mor xi_form(const Mor& f, const ClassicalStructure& x, const ClassicalStructure& y, const Obj& astar,
            const Obj& bstar) {
    const Obj a = strip_prefix(strip_prefix(f.dom(), astar, "decohered form"), x.object(), "decohered form");
    const Obj b = strip_prefix(strip_prefix(f.cod(), bstar, "decohered form"), y.object(), "decohered form");
    return compose(sandwich(bstar, y.delta(), b), compose(f, sandwich(astar, x.nabla(), a)));
}

Mor copyright_form(const Mor& g, const ClassicalStructure& x, const ClassicalStructure& y,
                   const Obj& astar, const Obj& bstar) {
    const Obj xx = x.object() * x.object();
    const Obj yy = y.object() * y.object();
    const Obj a = strip_prefix(strip_prefix(g.dom(), astar, "copying form"), xx, "copying form");
    const Obj b = strip_prefix(strip_prefix(g.cod(), bstar, "copying form"), yy, "copying form");
    return compose(sandwich(bstar, y.nabla(), b), compose(g, sandwich(astar, x.delta(), a)));
}

namespace {

void require_cq_type(const Mor& f, const ClassicalStructure& x, const ClassicalStructure& y,
                     const CompactStructure& ca, const CompactStructure& cb, std::size_t copies) {
    Obj xs = Obj::power(x.object(), copies);
    Obj ys = Obj::power(y.object(), copies);
    require_type(f, ca.astar * xs * ca.a, cb.astar * ys * cb.a, "classical-quantum map");
}

}  // namespace

bool is_cq(const Mor& f, const ClassicalStructure& x, const ClassicalStructure& y,
           const CompactStructure& ca, const CompactStructure& cb, double tol) {
    require_cq_type(f, x, y, ca, cb, 1);
    const CompactStructure cxa = compact_tensor(bell_from_classical(x, tol), ca);
    const CompactStructure cyb = compact_tensor(bell_from_classical(y, tol), cb);
    return is_completely_positive(xi_form(f, x, y, ca.astar, cb.astar), cxa, cyb, tol);
}

bool is_cq_decoherent(const Mor& g, const ClassicalStructure& x, const ClassicalStructure& y,
                      const CompactStructure& ca, const CompactStructure& cb, double tol) {
    require_cq_type(g, x, y, ca, cb, 2);
    const Mor in_xi = sandwich(ca.astar, decoherence(x), ca.a);
    const Mor out_xi = sandwich(cb.astar, decoherence(y), cb.a);
    if (!approx_eq(compose(out_xi, g), g, tol) || !approx_eq(compose(g, in_xi), g, tol)) return false;
    const CompactStructure cxa = compact_tensor(bell_from_classical(x, tol), ca);
    const CompactStructure cyb = compact_tensor(bell_from_classical(y, tol), cb);
    return is_completely_positive(g, cxa, cyb, tol);
}

Mor cq_iso_xi(const Mor& f, const ClassicalStructure& x, const ClassicalStructure& y,
              const CompactStructure& ca, const CompactStructure& cb, double tol) {
    if (!is_cq(f, x, y, ca, cb, tol)) {
        throw Error(ErrorCode::classification_failure, "decohered form is not completely positive");
    }
    return xi_form(f, x, y, ca.astar, cb.astar);
}

Mor cq_iso_copyright(const Mor& g, const ClassicalStructure& x, const ClassicalStructure& y,
                     const CompactStructure& ca, const CompactStructure& cb, double tol) {
    if (!is_cq_decoherent(g, x, y, ca, cb, tol)) {
        throw Error(ErrorCode::classification_failure,
                    "map is not completely positive and decoherent in its classical types");
    }
    return copyright_form(g, x, y, ca.astar, cb.astar);
}

Mor embed_pair(const Mor& phi, const Mor& g, const ClassicalStructure& x, const ClassicalStructure& y,
               const Obj& a, const Obj& b) {
    const Obj& ox = x.object();
    const SemiringKind k = x.kind();
    require_type(phi, ox, y.object(), "embedded classical component");
    require_type(g, a * ox * a, b * b, "embedded quantum component");
    Mor t = sandwich(a, x.delta(), a);  // A* X X A
    const std::array<Obj, 4> in_blocks{a, ox, ox, a};
    const std::array<std::size_t, 4> in_order{0, 1, 3, 2};
    t = compose(block_permutation(in_blocks, in_order, k), t);  // A* X A X
    t = compose(tensor(g, phi), t);                              // B* B Y
    const std::array<Obj, 3> out_blocks{b, b, y.object()};
    const std::array<std::size_t, 3> out_order{0, 2, 1};
    return compose(block_permutation(out_blocks, out_order, k), t);
}

Mor embed_sc(const SCMor& m) {
    return embed_pair(m.phi(), m.g(), m.dom().x, m.cod().x, m.dom().a, m.cod().a);
}

}  // namespace cqm
