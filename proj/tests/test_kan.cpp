#include <doctest.h>

#include <random>

#include "feyncat/descriptor.hpp"
#include "feyncat/kan.hpp"
#include "oracles.hpp"

using namespace feyncat;

namespace {

Corolla numbered_corolla(int n, std::optional<int> genus) { return oracle::numbered({n}, "", genus)[0]; }

}  // namespace

TEST_CASE("partition does not depend on merge order") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    int n = 1 + static_cast<int>(rng() % 30);
    std::vector<std::pair<int, int>> merges;
    int m = static_cast<int>(rng() % 40);
    for (int k = 0; k < m; ++k) merges.emplace_back(rng() % n, rng() % n);
    auto ids = partition(n, merges);
    auto shuffled = merges;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (auto& [a, b] : shuffled)
      if (rng() % 2) std::swap(a, b);
    CHECK(partition(n, shuffled) == ids);

    oracle::UnionFind uf(n);
    for (auto [a, b] : merges) uf.unite(a, b);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) CHECK((ids[a] == ids[b]) == (uf.find(a) == uf.find(b)));
    // numbered by least member
    std::vector<int> first;
    for (int a = 0; a < n; ++a)
      if (std::find(first.begin(), first.end(), ids[a]) == first.end()) {
        CHECK(ids[a] == static_cast<int>(first.size()));
        first.push_back(ids[a]);
      }
  }
}

TEST_CASE("genus zero envelope of CycAss has (n-1)! classes") {
  auto i = parse_functor("i:C->M");
  auto cyc = builtin_op("CycAss");
  for (int n = 3; n <= 4; ++n) {
    auto c = numbered_corolla(n, 0);
    auto p = pushforward_corolla(i, cyc, c, default_bound(i, c, 4));
    CHECK(p->stabilized());
    CHECK(static_cast<long long>(p->classes().size()) == oracle::factorial(n - 1));
    CHECK(p->dangling() == 0);
    // mu is onto: every cyclic order names its own class
    auto po = pushforward_op(i, cyc, 4);
    std::set<Element> hit;
    for (const auto& e : cyc->elements(c)) hit.insert(po->mu(numbered_corolla(n, {}), e));
    CHECK(static_cast<long long>(hit.size()) == oracle::factorial(n - 1));
  }
}

TEST_CASE("pushing Triv along the identity gives Triv") {
  auto id = parse_functor("id:C");
  for (int n = 0; n <= 4; ++n) {
    auto c = numbered_corolla(n, {});
    auto p = pushforward_corolla(id, terminal_op(), c, default_bound(id, c, 2));
    CHECK(p->classes().size() == 1);
    auto t = p->terminal(0);
    CHECK(t.weak);
    CHECK(t.strict);
  }
}

TEST_CASE("forgetting a decoration recovers the op") {
  for (std::string op : {"CycAss", "CycDihed"}) {
    auto f = parse_functor("forget:C/" + op);
    for (int n = 1; n <= 4; ++n) {
      auto c = numbered_corolla(n, {});
      auto p = pushforward_corolla(f, terminal_op(), c, default_bound(f, c, 2));
      CAPTURE(op);
      CAPTURE(n);
      CHECK(p->stabilized());
      CHECK(p->classes().size() == builtin_op(op)->elements(c).size());
    }
  }
}

TEST_CASE("class counts settle as the bound grows") {
  auto i = parse_functor("i:C->M");
  auto cyc = builtin_op("CycAss");
  auto c = numbered_corolla(2, 1);
  auto a = pushforward_corolla(i, cyc, c, default_bound(i, c, 4));
  auto b = pushforward_corolla(i, cyc, c, default_bound(i, c, 6));
  REQUIRE(a->level_counts().size() == 3);
  CHECK(a->stabilized());
  CHECK(b->stabilized());
  CHECK(a->classes().size() == b->classes().size());
  CHECK(b->level_counts()[2] == static_cast<long long>(b->classes().size()));
}

TEST_CASE("pushing Triv along C to M is terminal") {
  auto i = parse_functor("i:C->M");
  auto po = pushforward_op(i, terminal_op(), 3);
  auto r = is_terminal(*po, builtin_category("M"), 4, 1);
  CHECK(r.terminal);
  auto listing = comma_objects(i, numbered_corolla(2, 1), default_bound(i, numbered_corolla(2, 1), 2));
  CHECK(listing.terminal_found);
  CHECK(!listing.objects.empty());
}

TEST_CASE("pushforward values on aggregates are products") {
  auto i = parse_functor("i:C->M");
  auto cyc = builtin_op("CycAss");
  auto x = parse_aggregate("*{1,2,3}g=0 x *{4,5,6,7}g=0");
  auto v = pushforward_at(i, cyc, x, x.weight() + 3);
  CHECK(v.stabilized);
  CHECK(v.class_count() == 2 * 6);
  CHECK(static_cast<long long>(v.classes().size()) == v.class_count());
}

TEST_CASE("node encoding round trips") {
  auto f = parse_functor("forget:C/CycAss");
  NodeParts p{"", "a,b,c", "*"};
  auto back = decode_node(f, encode_node(f, p));
  CHECK(back.decoration == p.decoration);
  CHECK(back.element == p.element);
}

TEST_CASE("small decomposition check") {
  DecothmOptions opt;
  opt.max_flags = 4;
  auto r = verify_decothm(builtin_category("C"), builtin_op("CycAss"), opt);
  CHECK(r.pass);
  CHECK(r.stabilized);
}
