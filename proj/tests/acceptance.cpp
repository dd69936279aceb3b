// One line per acceptance criterion.  Exit status is the number of failing
// criteria.
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>

#include "feyncat/canonical.hpp"
#include "feyncat/category.hpp"
#include "feyncat/decorate.hpp"
#include "feyncat/descriptor.hpp"
#include "feyncat/kan.hpp"
#include "feyncat/surface.hpp"
#include "oracles.hpp"

using namespace feyncat;

namespace {

// Pinned limits.
constexpr double kDecothmSeconds = 60.0;
constexpr double kWordsSeconds = 10.0;
constexpr int kDecothmFlags = 6;
constexpr int kTrivFlags = 5;
constexpr int kAssocTriples = 1000;
constexpr int kFunctorPairs = 500;
constexpr int kSquareSamples = 100;
constexpr int kWordLength = 8;
constexpr int kDihedralFlags = 5;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void line(int n, const char* what, bool pass, const std::string& detail) {
  std::printf("criterion %d [%s]: %s  %s\n", n, what, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  failures += !pass;
}

std::string fact(const Report& r, const std::string& key) {
  for (const auto& [k, v] : r.facts)
    if (k == key) return v;
  return "?";
}

std::string first_failure(const Report& r) { return r.failures.empty() ? "" : "; first: " + r.failures[0].substr(0, 160); }

void decothm() {
  auto t = Clock::now();
  bool pass = true;
  std::string detail;
  for (std::string name : {"Ass", "CycAss", "CycDihed", "GenusN(cap=3)"}) {
    auto op = builtin_op(name);
    DecothmOptions opt;
    opt.max_flags = kDecothmFlags;
    auto r = verify_decothm(builtin_category(op->domain()), op, opt);
    pass &= r.pass && r.stabilized;
    detail += name + " " + (r.pass ? "ok" : "fail") + " (" + fact(r, "objects") + " objects); ";
    if (!r.pass) detail += first_failure(r) + " ";
  }
  double s = since(t);
  line(1, "decothm", pass && s < kDecothmSeconds, detail + std::to_string(s) + " s");
}

void trivlprop() {
  auto t = Clock::now();
  bool pass = true;
  long long pairs = 0, oracle_checked = 0;
  auto triv = terminal_op();
  for (std::string name : {"G", "C", "M"}) {
    auto f = builtin_category(name);
    auto d = decorate(f, triv);
    const bool marked = f.cond.genus_marked;
    std::vector<Aggregate> objects;
    for (const auto& ds : oracle::degree_lists(kTrivFlags, 3)) {
      if (!marked) {
        objects.push_back(oracle::numbered(ds));
        continue;
      }
      // every genus mark in {0, 1}
      for (unsigned m = 0; m < (1u << ds.size()); ++m) {
        std::vector<Corolla> cs = oracle::numbered(ds).corollas();
        for (std::size_t k = 0; k < cs.size(); ++k) cs[k].genus = (m >> k) & 1u;
        objects.emplace_back(cs);
      }
    }
    for (const auto& x : objects)
      for (const auto& y : objects) {
        if (y.flag_count() > x.flag_count()) continue;  // no morphisms
        auto homs = hom_enumerate(f, x, y);
        auto dh = dec_hom(d, make_object(d, x, Tuple(x.size(), "*")), make_object(d, y, Tuple(y.size(), "*")));
        pass &= dh.size() == homs.size();
        if (name == "G") {
          std::vector<int> dx, dy;
          for (const auto& c : x.corollas()) dx.push_back(c.degree());
          for (const auto& c : y.corollas()) dy.push_back(c.degree());
          pass &= static_cast<long long>(homs.size()) == oracle::hom_count_g(dx, dy);
          ++oracle_checked;
        }
        ++pairs;
      }
  }
  line(2, "trivlprop", pass,
       std::to_string(pairs) + " object pairs in G, C, M (" + std::to_string(oracle_checked) +
           " also against the G count oracle); " + std::to_string(since(t)) + " s");
}

void hereditary() {
  auto t = Clock::now();
  long long enumerated = 0, bad = 0;
  for (const auto& ds : oracle::degree_lists(5, 4))
    for (const auto& dt : oracle::degree_lists(5, 3)) {
      auto x = oracle::numbered(ds, "s");
      auto y = oracle::numbered(dt, "t");
      for (const auto& phi : hom_enumerate_all(x, y)) {
        auto back = recompose(decompose(phi), x);
        bad += !(back == phi) || canonical_form(back).certificate != canonical_form(phi).certificate;
        ++enumerated;
      }
    }
  std::mt19937_64 rng(2024);
  long long triples = 0, assoc_bad = 0;
  for (int i = 0; i < kAssocTriples; ++i) {
    auto x = oracle::random_aggregate(rng, 4, 4, "x", i % 2 == 1);
    auto phi = oracle::random_morphism(rng, x, "y");
    auto psi = oracle::random_morphism(rng, phi.target(), "z");
    auto chi = oracle::random_morphism(rng, psi.target(), "w");
    assoc_bad += !(compose(chi, compose(psi, phi)) == compose(compose(chi, psi), phi));
    ++triples;
  }
  line(3, "hereditary", bad == 0 && assoc_bad == 0 && triples >= kAssocTriples,
       std::to_string(enumerated) + " enumerated morphisms, " + std::to_string(bad) + " decomposition mismatches; " +
           std::to_string(triples) + " triples, " + std::to_string(assoc_bad) + " associativity failures; " +
           std::to_string(since(t)) + " s");
}

void functoriality() {
  auto t = Clock::now();
  bool pass = true;
  std::string detail;
  for (std::string name : {"Triv", "Ass", "CycAss", "CycDihed", "GenusN(cap=3)", "DirSet", "Rooted"}) {
    auto r = check_functor(*builtin_op(name), kFunctorPairs, 17);
    bool ok = r.pass && std::stoll(fact(r, "composable_pairs")) >= kFunctorPairs;
    pass &= ok;
    detail += name + (ok ? " ok" : " fail" + first_failure(r)) + "; ";
  }
  // GenusN against E - V + C on connected fibers
  auto op = genus_op(1000);
  std::mt19937_64 rng(99);
  long long checked = 0, bad = 0;
  while (checked < kFunctorPairs) {
    auto x = oracle::random_aggregate(rng, 4, 4, "f");
    auto phi = oracle::random_morphism(rng, x, "t");
    auto b1 = oracle::fiber_b1(phi);
    oracle::UnionFind uf(x.size());
    for (int f = 0; f < x.flag_count(); ++f)
      if (phi.partner(f) >= 0) uf.unite(x.vertex_of(f), x.vertex_of(phi.partner(f)));
    std::vector<std::set<int>> roots(phi.target().size());
    for (int u = 0; u < x.size(); ++u) roots[phi.vertex_image(u)].insert(uf.find(u));
    bool connected = true;
    for (const auto& r : roots) connected &= r.size() == 1;
    if (!connected) continue;
    Tuple in;
    std::vector<int> expect = b1;
    for (int u = 0; u < x.size(); ++u) {
      int g = static_cast<int>(rng() % 3);
      in.push_back(std::to_string(g));
      expect[phi.vertex_image(u)] += g;
    }
    auto out = eval_morphism(*op, phi, in);
    for (int w = 0; w < phi.target().size(); ++w) bad += out[w] != std::to_string(expect[w]);
    ++checked;
  }
  pass &= bad == 0;
  line(4, "functoriality", pass,
       detail + "GenusN vs b1 oracle: " + std::to_string(checked) + " morphisms, " + std::to_string(bad) +
           " mismatches; " + std::to_string(since(t)) + " s");
}

void minimal_extension() {
  auto t = Clock::now();
  auto i = parse_functor("i:C->M");
  MinimalExtensionOptions opt;
  auto plain = minimal_extension_check(i, opt);
  auto po = pushforward_op(i, terminal_op(), opt.slack);
  auto term = is_terminal(*po, builtin_category("M"), opt.max_flags, opt.max_genus);
  MinimalExtensionOptions dopt;
  dopt.op = builtin_op("CycAss");
  auto dec = minimal_extension_check(i, dopt);
  bool pass = plain.pass && term.terminal && dec.pass;
  line(5, "minimal-extension", pass,
       "i: " + std::string(plain.pass ? "ok" : "fail") + " (" + fact(plain, "weakly_terminal") + "/" +
           fact(plain, "targets") + " targets with a terminal object), is_terminal(i_*Triv) " +
           (term.terminal ? "true" : "false at " + term.witness) + "; i^CycAss: " + (dec.pass ? "ok" : "fail") +
           " (" + fact(dec, "weakly_terminal") + "/" + fact(dec, "targets") + " with a terminal object, " +
           fact(dec, "terminal_pushforward_values") + " one-point values)" + first_failure(dec) + "; " +
           std::to_string(since(t)) + " s");
}

void square() {
  auto t = Clock::now();
  SquareOptions opt;
  opt.samples = kSquareSamples;
  auto r = verify_square(parse_functor("i:C->M"), cycass_to_cycdihed(), opt);
  line(6, "square", r.pass && r.stabilized,
       fact(r, "morphisms") + " decorated morphisms, " + fact(r, "triangles") + " triangle checks" + first_failure(r) + "; " + std::to_string(since(t)) + " s");
}

void envelope() {
  auto t = Clock::now();
  auto i = parse_functor("i:C->M");
  auto cyc = builtin_op("CycAss");
  auto po = pushforward_op(i, cyc, 4);
  bool pass = true;
  std::string detail;
  for (int n = 3; n <= 5; ++n) {
    Corolla c = oracle::numbered({n}, "", 0)[0];
    Corolla bare = oracle::numbered({n})[0];
    auto p = pushforward_corolla(i, cyc, c, default_bound(i, c, 4));
    // direct enumeration of cyclic orders: rotations of every permutation
    std::vector<Label> perm = bare.flags;
    std::set<std::vector<Label>> orders;
    do orders.insert(oracle::rotate_least(perm));
    while (std::next_permutation(perm.begin(), perm.end()));
    std::set<Element> image;
    for (const auto& o : orders) {
      std::string e;
      for (const auto& l : o) e += (e.empty() ? "" : ",") + l;
      image.insert(po->mu(bare, e));
    }
    std::set<Element> keys;
    for (const auto& k : p->classes()) keys.insert(k.key);
    bool ok = p->stabilized() && static_cast<long long>(p->classes().size()) == oracle::factorial(n - 1) &&
              orders.size() == p->classes().size() && image == keys;
    pass &= ok;
    detail += "|S|=" + std::to_string(n) + ": " + std::to_string(p->classes().size()) + " classes, " +
              std::to_string(orders.size()) + " cyclic orders" + (ok ? "" : " MISMATCH") + "; ";
  }
  line(7, "genus-0 envelope", pass, detail + std::to_string(since(t)) + " s");
}

void words() {
  auto t = Clock::now();
  long long n = 0, bad = 0;
  for (int len = 1; len <= kWordLength; ++len)
    for (const auto& w : oracle::all_words(len)) {
      std::vector<Letter> ls;
      for (const auto& [name, inv] : w) ls.push_back({name, inv});
      auto got = classify_word(ls);
      auto cw = oracle::cw_classify(w);
      bad += got.orientable != cw.orientable || got.genus != cw.genus || got.boundary != cw.boundary ||
             got.euler != cw.euler;
      ++n;
    }
  auto is = [](const char* w, bool o, int g, int b) {
    auto s = classify_word(w);
    return s.orientable == o && s.genus == g && s.boundary == b;
  };
  bool named = is("a b a^-1 b^-1", true, 1, 0) && is("a a", false, 1, 0) && is("a a b b", false, 2, 0);
  double s = since(t);
  line(8, "surface classifier", bad == 0 && named && s < kWordsSeconds,
       std::to_string(n) + " words of length <= " + std::to_string(kWordLength) + ", " + std::to_string(bad) +
           " mismatches, named examples " + (named ? "ok" : "wrong") + "; " + std::to_string(s) + " s");
}

void dihedral() {
  auto t = Clock::now();
  auto i = parse_functor("i:C->M");
  auto sigma = cycass_to_cycdihed();
  auto pc = pushforward_op(i, sigma.source, 4);
  auto pd = pushforward_op(i, sigma.target, 4);
  long long classes = 0, non_orientable = 0, hit = 0;
  std::string witness;
  for (int n = 0; n <= kDihedralFlags; ++n)
    for (int g = 0; n + 2 * g <= kDihedralFlags; ++g) {
      Corolla c = oracle::numbered({n}, "", g)[0];
      auto dih = pd->at(c);
      auto cyc = pc->at(c);
      std::set<Element> image;
      for (const auto& k : cyc->classes()) image.insert(pc->induced(k.key, c, sigma, *pd));
      for (int k = 0; k < static_cast<int>(dih->classes().size()); ++k) {
        ++classes;
        hit += image.count(dih->classes()[k].key);
        if (!is_orientable(class_ribbon(*dih, k))) {
          ++non_orientable;
          if (witness.empty()) witness = format_aggregate(Aggregate({c})) + " class " + std::to_string(k);
        }
      }
    }
  bool some = non_orientable > 0, onto = hit == classes;
  line(9, "dihedral", some && onto,
       std::to_string(non_orientable) + "/" + std::to_string(classes) + " classes non-orientable (first: " + witness +
           "); CycAss classes reach " + std::to_string(hit) + "/" + std::to_string(classes) +
           (onto ? "" : " (not onto)") + "; " + std::to_string(since(t)) + " s");
}

}  // namespace

int main() {
  decothm();
  trivlprop();
  hereditary();
  functoriality();
  minimal_extension();
  square();
  envelope();
  words();
  dihedral();
  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}
