#include <doctest.h>

#include <random>

#include "feyncat/category.hpp"
#include "feyncat/descriptor.hpp"
#include "feyncat/orders.hpp"
#include "feyncat/setops.hpp"
#include "oracles.hpp"

using namespace feyncat;

namespace {

// CycAss with the second corolla read backwards whenever exactly two corollas
// are glued; composites and direct gluings then disagree.
class BrokenSplice : public SetOp {
 public:
  std::string name() const override { return "BrokenSplice"; }
  std::string domain() const override { return "C"; }
  std::vector<Element> elements(const Corolla& c, const Element& b) const override { return real_->elements(c, b); }
  Element act(const GraphMorphism& phi, const Tuple& inputs, const Tuple& base) const override {
    Tuple in = inputs;
    if (in.size() == 2) {
      auto w = split(in[1], ',');
      std::reverse(w.begin(), w.end());
      in[1] = join(least_rotation(w), ',');
    }
    return real_->act(phi, in, base);
  }

 private:
  OpPtr real_ = builtin_op("CycAss");
};

std::vector<Label> words(const Element& e) { return e.empty() ? std::vector<Label>{} : split(e, ','); }

int components_over(const GraphMorphism& phi, int w) {
  const Aggregate& x = phi.source();
  oracle::UnionFind uf(x.size());
  for (int f = 0; f < x.flag_count(); ++f)
    if (phi.partner(f) >= 0) uf.unite(x.vertex_of(f), x.vertex_of(phi.partner(f)));
  std::set<int> roots;
  for (int u = 0; u < x.size(); ++u)
    if (phi.vertex_image(u) == w) roots.insert(uf.find(u));
  return static_cast<int>(roots.size());
}

}  // namespace

TEST_CASE("element counts") {
  auto cyc = builtin_op("CycAss");
  auto dih = builtin_op("CycDihed");
  for (int n = 1; n <= 6; ++n) {
    auto c = oracle::numbered({n})[0];
    CHECK(cyc->elements(c).size() == static_cast<std::size_t>(oracle::factorial(n - 1)));
    CHECK(dih->elements(c).size() == static_cast<std::size_t>(oracle::factorial(n - 1) << (n - 1)));
  }
  CHECK(dih->elements(Corolla{}).size() == 1);
  CHECK(builtin_op("GenusN(cap=3)")->elements(Corolla{}).size() == 4);
  CHECK(builtin_op("Triv")->elements(oracle::numbered({5})[0]).size() == 1);

  auto ass = builtin_op("Ass");
  auto c3 = oracle::numbered({3})[0];
  std::size_t total = 0;
  for (const auto& root : rooted_op()->elements(c3)) total += ass->elements(c3, root).size();
  CHECK(rooted_op()->elements(c3).size() == 3);
  CHECK(total == 6);
  CHECK(dihedral_orders({"1", "2", "3"}).size() == 1);
  CHECK(dihedral_orders({"1", "2", "3", "4", "5"}).size() == 12);
}

TEST_CASE("signed cyclic words") {
  auto s = parse_signed("a+,b-,c+");
  CHECK(s.order == std::vector<Label>{"a", "b", "c"});
  CHECK(s.sign == std::vector<int>{0, 1, 0});
  // reversal with all signs flipped is the same element
  CHECK(canonical_signed(s) == canonical_signed(parse_signed("c-,b+,a-")));
  CHECK(canonical_signed(s) != canonical_signed(parse_signed("c+,b-,a+")));
  CHECK_THROWS_AS(parse_signed("a"), Error);
}

TEST_CASE("product law on aggregates") {
  std::mt19937_64 rng(3);
  auto cyc = builtin_op("CycAss");
  for (int i = 0; i < 50; ++i) {
    auto x = oracle::random_aggregate(rng, 3, 4, "f");
    long long expect = 1;
    for (const auto& c : x.corollas()) expect *= oracle::factorial(std::max(c.degree(), 1) - 1);
    CHECK(eval_object_size(*cyc, x) == expect);
    CHECK(static_cast<long long>(eval_object(*cyc, x).size()) == expect);
  }
  CHECK(eval_object(*cyc, Aggregate()).size() == 1);
}

TEST_CASE("eval_morphism is computed target by target") {
  std::mt19937_64 rng(5);
  auto cyc = builtin_op("CycAss");
  auto c = builtin_category("C");
  Sampler s(c, 5);
  for (int i = 0; i < 50; ++i) {
    auto a = s.random_morphism();
    auto b = s.random_morphism();
    std::map<Label, Label> mx, my;
    for (const auto& l : b.phi.source().labels()) mx[l] = "b" + l;
    for (const auto& l : b.phi.target().labels()) my[l] = "b" + l;
    auto b2 = relabel_target(relabel_source(b.phi, mx), my);
    Tuple ta, tb;
    for (const auto& k : a.phi.source().corollas()) ta.push_back(cyc->random_element(k, rng));
    for (const auto& k : b2.source().corollas()) tb.push_back(cyc->random_element(k, rng));
    Tuple both = ta;
    both.insert(both.end(), tb.begin(), tb.end());
    auto left = eval_morphism(*cyc, tensor(a.phi, b2), both);
    auto ra = eval_morphism(*cyc, a.phi, ta), rb = eval_morphism(*cyc, b2, tb);
    ra.insert(ra.end(), rb.begin(), rb.end());
    CHECK(left == ra);
  }
}

TEST_CASE("CycAss gluing of two corollas is the splice") {
  auto cyc = builtin_op("CycAss");
  auto x = parse_aggregate("*{a,x1,x2,x3} x *{b,y1,y2}");
  auto y = Aggregate::corolla({"x1", "x2", "x3", "y1", "y2"});
  std::map<Label, Label> fm;
  for (const auto& l : y.labels()) fm[l] = l;
  auto phi = GraphMorphism::from_labels(x, y, fm, {0, 0}, {{"a", "b"}});
  int seen = 0;
  std::set<Element> image;
  for (const auto& p : cyc->elements(x[0]))
    for (const auto& q : cyc->elements(x[1])) {
      auto got = cyc->act(phi, {p, q});
      CHECK(words(got) == oracle::splice(words(p), "a", words(q), "b"));
      image.insert(got);
      ++seen;
    }
  CHECK(seen == 12);
  CHECK(image.size() == 12);
}

TEST_CASE("CycAss rejects loops") {
  auto cyc = builtin_op("CycAss");
  auto x = parse_aggregate("*{a,b,c}");
  auto phi = GraphMorphism::from_labels(x, Aggregate::corolla({"c"}), {{"c", "c"}}, {0}, {{"a", "b"}});
  CHECK_THROWS_AS(cyc->act(phi, {"a,b,c"}), Error);
}

TEST_CASE("CycDihed gluing matches the unsigned splice on positive words") {
  auto dih = builtin_op("CycDihed");
  auto x = parse_aggregate("*{a,x1,x2} x *{b,y1,y2}");
  auto y = Aggregate::corolla({"x1", "x2", "y1", "y2"});
  std::map<Label, Label> fm;
  for (const auto& l : y.labels()) fm[l] = l;
  auto phi = GraphMorphism::from_labels(x, y, fm, {0, 0}, {{"a", "b"}});
  for (const auto& p : cyclic_orders({"a", "x1", "x2"}))
    for (const auto& q : cyclic_orders({"b", "y1", "y2"})) {
      auto plus = [](const std::vector<Label>& w) { return canonical_signed({w, std::vector<int>(w.size(), 0)}); };
      auto expect = plus(oracle::splice(p, "a", q, "b"));
      CHECK(dih->act(phi, {plus(p), plus(q)}) == expect);
    }
  // flipping one whole corolla's side does not change the glued surface
  auto flipped = dih->act(phi, {"a+,x1+,x2+", canonical_signed(parse_signed("b-,y2-,y1-"))});
  CHECK(flipped == dih->act(phi, {"a+,x1+,x2+", "b+,y1+,y2+"}));
}

TEST_CASE("built-in ops are functorial") {
  for (std::string name : {"Triv", "Ass", "CycAss", "CycDihed", "GenusN(cap=3)", "DirSet", "Rooted"}) {
    CAPTURE(name);
    auto r = check_functor(*builtin_op(name), 200, 11);
    CHECK(r.pass);
    if (!r.pass) MESSAGE(r.to_table());
  }
}

TEST_CASE("a broken splice is caught") {
  BrokenSplice b;
  CHECK_FALSE(check_functor(b, 200, 11).pass);
}

TEST_CASE("GenusN adds b1 on connected fibers") {
  auto op = genus_op(6);
  std::mt19937_64 rng(29);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    auto x = oracle::random_aggregate(rng, 4, 4, "f");
    auto phi = oracle::random_morphism(rng, x, "t");
    bool connected = true;
    for (int w = 0; w < phi.target().size(); ++w) connected &= components_over(phi, w) == 1;
    if (!connected) continue;
    Tuple in;
    std::vector<int> g;
    for (int u = 0; u < x.size(); ++u) {
      g.push_back(static_cast<int>(rng() % 2));
      in.push_back(std::to_string(g.back()));
    }
    auto b1 = oracle::fiber_b1(phi);
    auto out = eval_morphism(*op, phi, in);
    for (int w = 0; w < phi.target().size(); ++w) {
      int expect = b1[w];
      for (int u = 0; u < x.size(); ++u)
        if (phi.vertex_image(u) == w) expect += g[u];
      CHECK(out[w] == std::to_string(std::min(expect, 6)));
    }
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("GenusN on a loop, saturation and disconnected fibers") {
  auto x = parse_aggregate("*{a,b}");
  auto loop = GraphMorphism::from_labels(x, Aggregate::corolla({}), {}, {0}, {{"a", "b"}});
  auto g3 = std::make_shared<GenusOp>(3);
  CHECK(g3->act(loop, {"0"}) == "1");
  CHECK(g3->saturations() == 0);
  CHECK(g3->act(loop, {"3"}) == "3");
  CHECK(g3->saturations() == 1);
  auto two = parse_aggregate("*{} x *{}");
  auto merge = GraphMorphism::from_labels(two, Aggregate::corolla({}), {}, {0, 0}, {});
  CHECK_THROWS_AS(g3->act(merge, {"0", "0"}), Error);
  CHECK(g3->act(merge, {"1", "1"}) == "1");
  CHECK_THROWS_AS(builtin_op("GenusN"), Error);
}

TEST_CASE("relabeling is equivariant") {
  std::mt19937_64 rng(31);
  auto cyc = builtin_op("CycAss");
  auto dih = builtin_op("CycDihed");
  for (int i = 0; i < 100; ++i) {
    auto c = oracle::random_aggregate(rng, 1, 6, "f")[0];
    auto m = oracle::random_relabeling(rng, c.flags, "r");
    auto e = cyc->random_element(c, rng);
    std::vector<Label> mapped;
    for (const auto& l : words(e)) mapped.push_back(m[l]);
    CHECK(words(relabel(*cyc, c, e, m)) == oracle::rotate_least(mapped));

    auto d = dih->random_element(c, rng);
    auto s = parse_signed(d);
    for (auto& l : s.order) l = m[l];
    CHECK(relabel(*dih, c, d, m) == canonical_signed(s));
  }
}

TEST_CASE("natural transformations") {
  auto t = cycass_to_cycdihed();
  CHECK(check_naturality(t, 200, 3).pass);
  CHECK(check_naturality(identity_nat(builtin_op("CycDihed")), 100, 3).pass);
  CHECK(check_naturality(to_terminal(builtin_op("CycAss")), 100, 3).pass);
  auto x = parse_aggregate("*{a,b,c}");
  CHECK(t.apply(x, {"a,c,b"}) == Tuple{"a+,c+,b+"});
}

TEST_CASE("dependent product reads its base") {
  auto p = dependent_product(rooted_op(), builtin_op("Ass"));
  auto c = oracle::numbered({3})[0];
  CHECK(p->elements(c).size() == 6);
  auto [a, b] = decode_pair(encode_pair("x=0,y=1", "y"));
  CHECK(a == "x=0,y=1");
  CHECK(b == "y");
}

TEST_CASE("table op from JSON") {
  auto op = table_op_from_json(R"({
    "name": "Parity", "domain": "G",
    "sets": {"0": ["e", "o"], "1": ["e", "o"], "2": ["e", "o"]},
    "actions": [
      {"morphism": {"source": {"corollas": [{"flags": ["a", "b"]}]},
                    "target": {"corollas": [{"flags": []}]},
                    "flag_map": {}, "vertex_map": [0], "ghost_edges": [["a", "b"]]},
       "inputs": ["e"], "output": "o"}
    ]})");
  CHECK(op->name() == "Parity");
  auto x = parse_aggregate("*{p,q}");
  auto loop = GraphMorphism::from_labels(x, Aggregate::corolla({}), {}, {0}, {{"p", "q"}});
  CHECK(op->act(loop, {"e"}) == "o");
  CHECK_THROWS_AS(op->act(loop, {"o"}), Error);
  CHECK_THROWS_AS(table_op_from_json("{"), Error);
  CHECK_THROWS_AS(builtin_op("NoSuchOp"), Error);
}
