#include <algorithm>
#include <numeric>

#include "feyncat/category.hpp"
#include "feyncat/orders.hpp"
#include "feyncat/serialize.hpp"
#include "feyncat/setops.hpp"

namespace feyncat {

namespace {

Tuple random_tuple(const SetOp& o, const FeynmanPresentation& f, const Aggregate& x, const Tuple& dec, Rng& rng) {
  if (f.decorated() && o.name() == f.decoration->name()) return dec;
  Tuple a;
  for (int v = 0; v < x.size(); ++v)
    a.push_back(o.random_element(x[v], rng, o.uses_base() && !dec.empty() ? dec[v] : Element{}));
  return a;
}

Tuple base_for(const SetOp& o, const Tuple& dec) { return o.uses_base() ? dec : Tuple{}; }

std::map<Label, Label> fresh_relabeling(const Aggregate& x, Sampler& s) {
  std::map<Label, Label> m;
  for (const auto& l : x.labels()) m[l] = s.fresh();
  return m;
}

Tuple relabel_tuple(const SetOp& o, const Aggregate& x, const Tuple& a, const std::map<Label, Label>& m,
                    const Tuple& base) {
  Tuple out;
  for (int v = 0; v < x.size(); ++v) out.push_back(relabel(o, x[v], a[v], m, base.empty() ? Element{} : base[v]));
  return out;
}

Tuple relabel_dec(const FeynmanPresentation& f, const Aggregate& x, const Tuple& d, const std::map<Label, Label>& m) {
  if (!f.decorated()) return {};
  return relabel_tuple(*f.decoration, x, d, m, {});
}

}  // namespace

Report check_functor(const SetOp& o, int samples, std::uint64_t seed) {
  Report r;
  r.name = "functor(" + o.name() + ")";
  FeynmanPresentation f = builtin_category(o.domain());
  Sampler s(f, seed);
  long long pairs = 0;
  for (int i = 0; i < samples; ++i) {
    auto [p, q] = s.random_composable();
    const GraphMorphism& phi = p.phi;
    const GraphMorphism& psi = q.phi;
    const Aggregate& x = phi.source();
    Tuple a = random_tuple(o, f, x, p.source_dec, s.rng());
    auto witness = [&](const std::string& what) {
      r.fail(what + ": phi=" + to_json(phi) + " psi=" + to_json(psi) + " a=" + join(a, ';'));
    };
    try {
      Tuple bx = base_for(o, p.source_dec), by = base_for(o, p.target_dec);
      if (eval_morphism(o, GraphMorphism::identity(x), a, bx) != a) witness("identity law");
      Tuple y = eval_morphism(o, phi, a, bx);
      if (!in_eval_object(o, phi.target(), y, by)) witness("image outside target set");
      Tuple z1 = eval_morphism(o, psi, y, by);
      Tuple z2 = eval_morphism(o, compose(psi, phi), a, bx);
      if (z1 != z2) witness("composition law");

      // relabeling both ends
      auto sx = fresh_relabeling(x, s), ty = fresh_relabeling(phi.target(), s);
      GraphMorphism phi2 = relabel_target(relabel_source(phi, sx), ty);
      Tuple a2 = relabel_tuple(o, x, a, sx, bx);
      Tuple bx2 = o.uses_base() ? relabel_dec(f, x, bx, sx) : Tuple{};
      Tuple lhs = eval_morphism(o, phi2, a2, bx2);
      Tuple rhs = relabel_tuple(o, phi.target(), y, ty, by);
      if (lhs != rhs) witness("relabeling equivariance");

      // permuting source corollas
      std::vector<int> perm(x.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), s.rng());
      Aggregate xp = x.sub(perm);
      GraphMorphism to_p = GraphMorphism::reorder(x, xp);
      std::vector<int> vm(x.size());
      for (int k = 0; k < x.size(); ++k) vm[perm[k]] = k;
      to_p = GraphMorphism(x, xp, to_p.flag_map(), vm, to_p.ghost());
      GraphMorphism phi3 = compose(phi, inverse(to_p));
      Tuple a3, b3;
      for (int k : perm) {
        a3.push_back(a[k]);
        if (!bx.empty()) b3.push_back(bx[k]);
      }
      if (eval_morphism(o, phi3, a3, b3) != y) witness("corolla permutation equivariance");
    } catch (const Error& e) {
      witness(std::string("exception ") + e.what());
    }
    ++pairs;
  }
  r.note("domain", f.name);
  r.note("composable_pairs", pairs);
  if (auto g = dynamic_cast<const GenusOp*>(&o)) r.note("saturations", g->saturations());
  return r;
}

Report check_naturality(const OpNatTrans& sigma, int samples, std::uint64_t seed) {
  Report r;
  r.name = "naturality(" + sigma.name + ")";
  FeynmanPresentation f = builtin_category(sigma.source->domain());
  Sampler s(f, seed);
  for (int i = 0; i < samples; ++i) {
    Sample p = s.random_morphism();
    Tuple a = random_tuple(*sigma.source, f, p.phi.source(), p.source_dec, s.rng());
    try {
      Tuple lhs = sigma.apply(p.phi.target(), eval_morphism(*sigma.source, p.phi, a, base_for(*sigma.source, p.source_dec)));
      Tuple rhs = eval_morphism(*sigma.target, p.phi, sigma.apply(p.phi.source(), a),
                                base_for(*sigma.target, p.source_dec));
      if (lhs != rhs) r.fail("square fails: " + to_json(p.phi) + " a=" + join(a, ';'));
    } catch (const Error& e) {
      r.fail(std::string("exception ") + e.what());
    }
  }
  r.note("samples", samples);
  return r;
}

}  // namespace feyncat
