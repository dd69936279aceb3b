#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "feyncat/descriptor.hpp"
#include "feyncat/kan.hpp"
#include "feyncat/orders.hpp"
#include "feyncat/serialize.hpp"

namespace feyncat {

namespace {

Corolla numbered(int first, int n, std::optional<int> genus = {}) {
  Corolla c;
  c.id = "v" + std::to_string(first);
  for (int k = 0; k < n; ++k) c.flags.push_back(std::to_string(first + k));
  c.genus = genus;
  return c;
}

// decoration tuple of a factor's node, split into the parts the op reads
struct FactorView {
  const CorollaPushforward& p;
  const SetOp& o;

  Element beta(int rep, const Tuple& t) const {
    const CommaRep& r = p.catalog().reps()[rep];
    Tuple dec, dirs;
    for (const auto& e : t) {
      NodeParts parts = decode_node(p.spec().f, e);
      dec.push_back(parts.decoration);
      dirs.push_back(parts.direction);
    }
    return o.act(r.arrow, dec, o.uses_base() ? dirs : Tuple{});
  }
};

// classes of forget_*(Triv) at one corolla against O(c); returns class -> O element
bool check_factor(const CorollaPushforward& p, const SetOp& o, const Element& dir, Report& r,
                  std::vector<Element>& beta_of_class) {
  FactorView view{p, o};
  const int nc = static_cast<int>(p.classes().size());
  beta_of_class.assign(nc, {});
  std::vector<char> seen(nc, 0);
  bool ok = true;
  const std::string where = format_aggregate(Aggregate({p.spec().target})) + (dir.empty() ? "" : " [" + dir + "]");
  for (long long v = 0; v < p.node_count(); ++v) {
    auto [rep, t] = p.node(v);
    Element b = view.beta(rep, t);
    int c = p.class_of_node(v);
    if (!seen[c]) {
      seen[c] = 1;
      beta_of_class[c] = b;
    } else if (beta_of_class[c] != b) {
      r.fail("beta not constant on a class at " + where + ": " + p.classes()[c].key);
      ok = false;
    }
  }
  std::vector<Element> image = beta_of_class;
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
    r.fail("beta not injective at " + where);
    ok = false;
  }
  auto want = o.elements(p.spec().target, o.uses_base() ? dir : Element{});
  std::sort(want.begin(), want.end());
  if (image != want) {
    r.fail("beta image differs from O at " + where + ": " + std::to_string(image.size()) + " classes vs " +
           std::to_string(want.size()) + " elements");
    ok = false;
  }
  if (!p.stabilized()) {
    r.stabilized = false;
    r.fail("unstabilized at " + where);
    ok = false;
  }
  if (p.dangling()) {
    r.fail("dangling transports at " + where);
    ok = false;
  }
  return ok;
}

}  // namespace

Report verify_decothm(const FeynmanPresentation& f, OpPtr o, const DecothmOptions& opt) {
  Report r;
  r.name = "decothm(" + f.name + "," + o->name() + ")";
  FeynmanFunctor fg = forget_functor(f, o);
  OpPtr triv = terminal_op();
  Rng rng(opt.seed);
  const bool rooted = f.decorated() && f.decoration->spec().basepoint.has_value();
  const int min_degree = rooted ? 1 : 0;
  long long objects = 0, classes = 0, equivariance = 0;

  // degree lists: nonincreasing, at most one flagless corolla
  std::vector<std::vector<int>> shapes;
  std::function<void(std::vector<int>&, int, int)> grow = [&](std::vector<int>& cur, int left, int cap) {
    if (!cur.empty()) shapes.push_back(cur);
    if (!opt.aggregates && !cur.empty()) return;
    for (int d = std::min(left, cap); d >= min_degree; --d) {
      if (d == 0 && !cur.empty() && cur.back() == 0) continue;
      cur.push_back(d);
      grow(cur, left - d, d);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  grow(cur, opt.max_flags, opt.max_flags);

  for (const auto& shape : shapes) {
    std::vector<Corolla> cs;
    int next = 1;
    for (int d : shape) {
      cs.push_back(numbered(next, d));
      next += d;
    }
    Aggregate x(cs);
    // direction decorations: every choice for single corollas, first flag otherwise
    std::vector<Tuple> dir_choices{Tuple{}};
    if (f.decorated()) {
      dir_choices.clear();
      if (x.size() == 1) {
        for (const auto& d : f.decoration->elements(x[0])) dir_choices.push_back({d});
      } else {
        Tuple t;
        for (const auto& c : x.corollas()) t.push_back(f.decoration->elements(c).front());
        dir_choices.push_back(t);
      }
    }
    for (const auto& dirs : dir_choices) {
      ++objects;
      int least = 0;
      for (const auto& c : x.corollas()) least += default_bound(fg, c, 0);
      PushforwardValue pv = pushforward_at(fg, triv, x, least + opt.slack, dirs);
      std::vector<std::vector<Element>> betas(x.size());
      bool ok = true;
      for (int j = 0; j < x.size(); ++j)
        ok = check_factor(*pv.factors[j], *o, dirs.empty() ? Element{} : dirs[j], r, betas[j]) && ok;
      classes += pv.class_count();
      Tuple base = o->uses_base() ? dirs : Tuple{};
      if (pv.class_count() != eval_object_size(*o, x, base)) {
        r.fail("class count differs from |O(X)| at " + format_aggregate(x));
        ok = false;
      }
      if (!ok) continue;

      // equivariance under a random relabeling and corolla permutation
      std::map<Label, Label> m;
      std::vector<Label> fresh;
      for (int k = 0; k < x.flag_count(); ++k) fresh.push_back("r" + std::to_string(k));
      std::shuffle(fresh.begin(), fresh.end(), rng);
      for (int k = 0; k < x.flag_count(); ++k) m[x.label(k)] = fresh[k];
      std::vector<int> perm(x.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<Corolla> moved;
      Tuple mdirs;
      for (int j : perm) {
        Corolla c = x[j];
        for (auto& l : c.flags) l = m[l];
        moved.push_back(c);
        if (!dirs.empty()) mdirs.push_back(relabel(*f.decoration, x[j], dirs[j], m));
      }
      Aggregate y(moved);
      int least_y = 0;
      for (const auto& c : y.corollas()) least_y += default_bound(fg, c, 0);
      PushforwardValue pw = pushforward_at(fg, triv, y, least_y + opt.slack, mdirs);
      for (int pos = 0; pos < y.size(); ++pos) {
        const int j = perm[pos];
        const CorollaPushforward& p = *pv.factors[j];
        const CorollaPushforward& q = *pw.factors[pos];
        std::vector<Element> qbeta;
        Report scratch;
        check_factor(q, *o, mdirs.empty() ? Element{} : mdirs[pos], scratch, qbeta);
        std::map<Label, Label> local;
        for (const auto& l : x[j].flags) local[l] = m[l];
        for (int c = 0; c < static_cast<int>(p.classes().size()); ++c) {
          const auto& k = p.classes()[c];
          const CommaRep& rep = p.catalog().reps()[k.rep];
          int c2 = q.class_of(rep.source, relabel_target(rep.arrow, local), k.element);
          ++equivariance;
          Element expect = relabel(*o, x[j], betas[j][c], local,
                                   o->uses_base() && !dirs.empty() ? dirs[j] : Element{});
          if (c2 < 0 || qbeta[c2] != expect) {
            r.fail("relabeling not equivariant at " + format_aggregate(x) + " class " + k.key);
            break;
          }
        }
      }
    }
  }
  r.note("objects", objects);
  r.note("classes", classes);
  r.note("equivariance_checks", equivariance);
  return r;
}

Report minimal_extension_check(const FeynmanFunctor& i, const MinimalExtensionOptions& opt) {
  Report r;
  r.name = "minimal-extension(" + i.name + (opt.op ? "," + opt.op->name() : "") + ")";
  long long targets = 0, weak = 0, strict = 0, terminal_values = 0;
  const bool marked = i.target.cond.genus_marked;
  for (int n = 0; n <= opt.max_flags; ++n)
    for (int g = 0; g <= (marked ? opt.max_genus : 0); ++g) {
      Corolla c = numbered(1, n, marked ? std::optional<int>(g) : std::nullopt);
      const std::string where = format_aggregate(Aggregate({c}));
      if (!opt.op) {
        auto p = pushforward_corolla(i, terminal_op(), c, default_bound(i, c, opt.slack));
        ++targets;
        if (p->classes().size() != 1) {
          r.fail("pushforward of Triv has " + std::to_string(p->classes().size()) + " classes at " + where);
          continue;
        }
        if (!p->stabilized()) {
          r.stabilized = false;
          r.fail("unstabilized at " + where);
        }
        ++terminal_values;
        TerminalResult t = p->terminal(0);
        weak += t.weak;
        strict += t.strict;
        if (!t.weak) r.fail("no terminal comma object at " + where + ": " + t.note);
        else if (!t.strict) r.note("not strictly terminal", where + ": " + t.note);
        continue;
      }
      if (n + 2 * g > opt.max_weight) continue;
      FeynmanFunctor io = decorated_inclusion(i, opt.op);
      const int bound = default_bound(i, c, opt.slack);
      auto inner = pushforward_corolla(i, opt.op, c, bound);
      if (!inner->stabilized()) {
        r.stabilized = false;
        r.fail("unstabilized " + opt.op->name() + " pushforward at " + where);
      }
      for (const auto& b : inner->classes()) {
        ++targets;
        auto p = pushforward_corolla(io, terminal_op(), c, bound, {}, b.key);
        const std::string at = where + " [" + b.key + "]";
        if (p->classes().size() == 1 && p->stabilized()) ++terminal_values;
        else r.fail("pushforward of Triv along i^O has " + std::to_string(p->classes().size()) + " classes (stabilized=" +
                    (p->stabilized() ? "yes" : "no") + ") at " + at);
        TerminalResult t = p->terminal(0);
        weak += t.weak;
        strict += t.strict;
        if (!t.weak) r.fail("no terminal comma object at " + at + ": " + t.note);
        else if (!t.strict) r.note("not strictly terminal", at + ": " + t.note);
      }
    }
  r.note("targets", targets);
  r.note("weakly_terminal", weak);
  r.note("strictly_terminal", strict);
  r.note("terminal_pushforward_values", terminal_values);
  return r;
}

Report verify_square(const FeynmanFunctor& i, const OpNatTrans& sigma, const SquareOptions& opt) {
  Report r;
  r.name = "square(" + i.name + "," + sigma.name + ")";
  auto fo = pushforward_op(i, sigma.source, opt.slack);
  auto fp = pushforward_op(i, sigma.target, opt.slack);
  Sampler s(i.source, opt.seed);
  DecoratedPresentation d = decorate(i.source, sigma.source);
  long long checked = 0, objects = 0, triangles = 0, attempts = 0;
  while (checked < opt.samples && attempts < 50 * opt.samples) {
    ++attempts;
    auto [x, dx] = s.random_object(3, opt.max_degree);
    if (x.flag_count() > opt.max_degree + 2) continue;
    auto sample = s.random_from(x, dx);
    if (!sample) continue;
    const GraphMorphism& phi = sample->phi;
    Tuple a;
    for (const auto& c : x.corollas()) a.push_back(sigma.source->random_element(c, s.rng()));
    DecoratedMorphism m = make_morphism(d, phi, a);
    try {
      DecoratedMorphism top = apply_fO(*fo, m);
      // forget' o f^O = f o forget
      if (top.base != i.map_morphism(m.base)) r.fail("forget' o f^O differs from f o forget: " + to_json(phi));
      // f^O lands in the decorated target: the pushforward acts compatibly
      if (eval_morphism(*fo, top.base, top.source_dec) != top.target_dec)
        r.fail("f^O(phi) does not carry decorations: " + to_json(m));
      // sigma'_dec o f^O = f^P o sigma_dec
      DecoratedMorphism left = top;
      for (int v = 0; v < x.size(); ++v) left.source_dec[v] = fo->induced(top.source_dec[v], top.base.source()[v], sigma, *fp);
      for (int v = 0; v < phi.target().size(); ++v)
        left.target_dec[v] = fo->induced(top.target_dec[v], top.base.target()[v], sigma, *fp);
      DecoratedMorphism right = apply_fO(*fp, transport_sigma(sigma, m));
      if (!(left == right)) r.fail("naturality square fails: " + to_json(m));
      objects += x.size() + phi.target().size();
      // triangle: [(X, phi, a)] -> [(X, phi, mu(a))] -> i_*O(phi)(mu(a)) is the identity
      for (int v = 0; v < phi.target().size(); ++v) {
        auto p = fo->at(top.base.target()[v]);
        long long node = static_cast<long long>(s.rng()() % static_cast<std::uint64_t>(p->node_count()));
        auto [rep, t] = p->node(node);
        const CommaRep& cr = p->catalog().reps()[rep];
        Tuple mus;
        for (int u = 0; u < cr.source.size(); ++u) mus.push_back(fo->mu(cr.source[u], t[u]));
        Element back = fo->act(cr.arrow, mus);
        if (back != p->classes()[p->class_of_node(node)].key)
          r.fail("triangle identity fails at " + cr.descriptor + " @ " + join(t, ';'));
        ++triangles;
      }
      ++checked;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::unstable_colimit) {
        r.stabilized = false;
        r.fail(e.what());
        break;
      }
      throw;
    }
  }
  if (checked < opt.samples) r.fail("only " + std::to_string(checked) + " samples drawn");
  r.note("morphisms", checked);
  r.note("objects", objects);
  r.note("triangles", triangles);
  return r;
}

}  // namespace feyncat
