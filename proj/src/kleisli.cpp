#include "cqm/kleisli.hpp"

#include <array>

#include "cqm/classify.hpp"

namespace cqm {

namespace {

void require_same_index(const ClassicalStructure& a, const ClassicalStructure& b) {
    if (!(a == b)) {
        throw Error(ErrorCode::index_mismatch, "Kleisli morphisms over different classical structures");
    }
}

void require_obj(const Obj& got, const Obj& want, const char* what) {
    if (!(got == want)) {
        throw Error(ErrorCode::dim_mismatch,
                    std::string(what) + ": expected " + want.str() + ", got " + got.str());
    }
}

Mor pairing(const ClassicalStructure& cs) { return compose(cs.top(), cs.nabla()); }

}  // namespace

KMor::KMor(ClassicalStructure cs, Obj a, Obj b, Mor f)
    : cs_(std::move(cs)), a_(std::move(a)), b_(std::move(b)), f_(std::move(f)) {
    require_obj(f_.dom(), cs_.object() * a_, "Kleisli domain");
    require_obj(f_.cod(), b_, "Kleisli codomain");
    require_same_semiring(f_, cs_.delta());
}

KMor::KMor(ClassicalStructure cs, Mor f)
    : KMor(cs, [&] {
          const std::size_t nx = cs.object().size();
          if (f.dom().size() < nx || !(f.dom().slice(0, nx) == cs.object())) {
              throw Error(ErrorCode::dim_mismatch, "domain " + f.dom().str() +
                                                       " does not start with " + cs.object().str());
          }
          return f.dom().slice(nx, f.dom().size() - nx);
      }(), f.cod(), f) {}

CoKMor::CoKMor(ClassicalStructure cs, Obj a, Obj b, Mor f)
    : cs_(std::move(cs)), a_(std::move(a)), b_(std::move(b)), f_(std::move(f)) {
    require_obj(f_.dom(), a_, "co-Kleisli domain");
    require_obj(f_.cod(), cs_.object() * b_, "co-Kleisli codomain");
    require_same_semiring(f_, cs_.delta());
}

KMor kcompose(const KMor& g, const KMor& f) {
    require_same_index(g.index(), f.index());
    require_obj(g.dom(), f.cod(), "Kleisli composition");
    const ClassicalStructure& cs = f.index();
    Mor t = tensor(cs.delta(), identity(f.dom(), cs.kind()));
    t = compose_at(f.mor(), t, cs.object().size());
    return KMor(cs, f.dom(), g.cod(), compose(g.mor(), t));
}

KMor kid(const ClassicalStructure& cs, const Obj& a) {
    return KMor(cs, a, a, tensor(cs.top(), identity(a, cs.kind())));
}

KMor ktensor(const KMor& f, const KMor& h) {
    require_same_index(f.index(), h.index());
    const ClassicalStructure& cs = f.index();
    const Obj& x = cs.object();
    Mor t = tensor(cs.delta(), identity(f.dom() * h.dom(), cs.kind()));
    const std::array<Obj, 4> blocks{x, x, f.dom(), h.dom()};
    const std::array<std::size_t, 4> order{0, 2, 1, 3};
    t = compose(block_permutation(blocks, order, cs.kind()), t);
    return KMor(cs, f.dom() * h.dom(), f.cod() * h.cod(), compose(tensor(f.mor(), h.mor()), t));
}

KMor kdagger(const KMor& f) {
    const ClassicalStructure& cs = f.index();
    Mor t = tensor(identity(cs.object(), cs.kind()), dagger(f.mor()));  // X B -> X X A
    t = compose_at(pairing(cs), t, 0);
    return KMor(cs, f.cod(), f.dom(), t);
}

CoKMor cocompose(const CoKMor& g, const CoKMor& f) {
    require_same_index(g.index(), f.index());
    require_obj(g.dom(), f.cod(), "co-Kleisli composition");
    const ClassicalStructure& cs = f.index();
    Mor t = compose_at(g.mor(), f.mor(), cs.object().size());  // A -> X X C
    t = compose_at(cs.nabla(), t, 0);
    return CoKMor(cs, f.dom(), g.cod(), t);
}

CoKMor coid(const ClassicalStructure& cs, const Obj& a) {
    return CoKMor(cs, a, a, tensor(cs.bot(), identity(a, cs.kind())));
}

CoKMor to_cokleisli(const KMor& f) {
    const ClassicalStructure& cs = f.index();
    const Mor eta = compose(cs.delta(), cs.bot());
    Mor t = tensor(eta, identity(f.dom(), cs.kind()));  // A -> X X A
    t = compose_at(f.mor(), t, cs.object().size());
    return CoKMor(cs, f.dom(), f.cod(), t);
}

KMor from_cokleisli(const CoKMor& f) {
    const ClassicalStructure& cs = f.index();
    Mor t = tensor(identity(cs.object(), cs.kind()), f.mor());  // X A -> X X B
    t = compose_at(pairing(cs), t, 0);
    return KMor(cs, f.dom(), f.cod(), t);
}

KMor lift_F(const Mor& f, const ClassicalStructure& cs) {
    require_same_semiring(f, cs.delta());
    return KMor(cs, f.dom(), f.cod(), tensor(cs.top(), f));
}

Mor apply_U(const KMor& f) {
    const ClassicalStructure& cs = f.index();
    const Mor t = tensor(cs.delta(), identity(f.dom(), cs.kind()));
    return compose_at(f.mor(), t, cs.object().size());
}

Mor k_inner(const KMor& x, const KMor& y) {
    require_same_index(x.index(), y.index());
    if (!x.dom().is_unit() || !y.dom().is_unit()) {
        throw Error(ErrorCode::dim_mismatch, "Kleisli inner product takes states");
    }
    require_obj(x.cod(), y.cod(), "Kleisli inner product");
    return kcompose(kdagger(x), y).mor();
}

Mor mix(const Mor& p, const KMor& f, double tol) {
    const ClassicalStructure& cs = f.index();
    const ClassicalStructure unit = ClassicalStructure::trivial(cs.kind());
    if (!(p.dom() == Obj()) || !(p.cod() == cs.object()) ||
        !stochastic_flags(p, unit, cs, tol).is_stochastic) {
        throw Error(ErrorCode::not_stochastic, "mixing needs a stochastic state of " + cs.object().str());
    }
    return compose(f.mor(), tensor(p, identity(f.dom(), cs.kind())));
}

Mor ksum(const KMor& f) {
    const ClassicalStructure& cs = f.index();
    return compose(f.mor(), tensor(cs.bot(), identity(f.dom(), cs.kind())));
}

}  // namespace cqm
