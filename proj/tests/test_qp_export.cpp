#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <string>

#include "dtgw/dtgw.hpp"
#include "dtgw/errors.hpp"
#include "dtgw/qp_export.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace dtgw;

namespace {

oracle::QpModel exported_model(const TemporalGraph& g, const TemporalGraph& h,
                               const DtgwOptions& opts) {
  std::stringstream buf;
  export_qp(g, h, opts, buf);
  buf.seekg(0);
  return oracle::parse_qp(buf);
}

}  // namespace

TEST_CASE("model shape for the 2x2x2x2 instance") {
  const auto g = testgen::graph({"a", "b"}, {{{0, 1}}, {}});
  const auto h = testgen::graph({"x", "y"}, {{}, {{0, 1}}});
  DtgwOptions opts;

  std::stringstream buf;
  export_qp(g, h, opts, buf);
  const std::string text = buf.str();
  CHECK(text.rfind("# dtgw binary quadratic model", 0) == 0);
  CHECK(text.find("dims 2 2 2 2\n") != std::string::npos);
  CHECK(text.find("\nend\n") != std::string::npos);

  buf.seekg(0);
  const auto model = oracle::parse_qp(buf);
  CHECK(model.nv == 2);
  CHECK(model.nw == 2);
  CHECK(model.t == 2);
  CHECK(model.u == 2);
  // (|V|+1)(|W|+1) mapping variables plus T*U warping variables = 13
  CHECK(model.m_vars.size() == 9);
  CHECK(model.w_vars.size() == 4);
  CHECK(model.m_vars.front() == "m1_1");
  CHECK(model.m_vars.back() == "m3_3");
  CHECK(model.w_vars == std::vector<std::string>{"w1_1", "w1_2", "w2_1", "w2_2"});

  REQUIRE(model.constraints.size() == 8);
  std::vector<std::string> names;
  for (const auto& c : model.constraints) names.push_back(c.name);
  CHECK(names == std::vector<std::string>{"a1", "a2", "b1", "b2", "c", "d1_1", "e1", "f1"});
  for (const auto& c : model.constraints) {
    if (c.name[0] == 'a' || c.name[0] == 'b') {
      CHECK(c.is_eq);
      CHECK(c.rhs == 1.0);
      CHECK(c.lhs.size() == 3);
      for (const auto& [sign, var] : c.lhs) CHECK(sign == 1.0);
    } else if (c.name == "c") {
      CHECK(c.is_eq);
      CHECK(c.rhs == 1.0);
      REQUIRE(c.lhs.size() == 1);
      CHECK(c.lhs[0].second == "w1_1");
    } else {
      CHECK_FALSE(c.is_eq);
      CHECK(c.rhs == 0.0);
      CHECK(c.lhs[0].first == 1.0);
      for (std::size_t k = 1; k < c.lhs.size(); ++k) CHECK(c.lhs[k].first == -1.0);
    }
  }

  // terms reference declared variables with positive coefficients
  const std::set<std::string> mset(model.m_vars.begin(), model.m_vars.end());
  const std::set<std::string> wset(model.w_vars.begin(), model.w_vars.end());
  CHECK_FALSE(model.terms.empty());
  for (const auto& term : model.terms) {
    CHECK(term.coeff > 0.0);
    CHECK(mset.count(term.m) == 1);
    CHECK(wset.count(term.w) == 1);
  }

  // the dummy-dummy pair stays out of every constraint (free at cost zero)
  for (const auto& c : model.constraints)
    for (const auto& [sign, var] : c.lhs) CHECK(var != "m3_3");
}

TEST_CASE("brute-force model optimum equals the exact distance") {
  const auto g = testgen::graph({"a", "b"}, {{{0, 1}}});
  const auto h = testgen::graph({"x", "y"}, {{}});
  DtgwOptions opts;
  CHECK(oracle::qp_brute_min(exported_model(g, h, opts)) == 2.0);
  CHECK(exact_dtgw(g, h, opts).distance == 2.0);

  SplitMix64 rng(606);
  for (int trial = 0; trial < 12; ++trial) {
    const auto a = testgen::random_graph(rng, 2 + static_cast<int>(rng.next_below(2)),
                                         1 + static_cast<int>(rng.next_below(3)), 0.5);
    const auto b = testgen::random_graph(rng, 2 + static_cast<int>(rng.next_below(2)),
                                         1 + static_cast<int>(rng.next_below(3)), 0.5);
    const double viaqp = oracle::qp_brute_min(exported_model(a, b, opts));
    const double exact = exact_dtgw(a, b, opts).distance;
    CHECK(viaqp == doctest::Approx(exact).epsilon(1e-9));
  }
}

TEST_CASE("unequal sizes and lifetimes") {
  SplitMix64 rng(7007);
  const auto g = testgen::random_graph(rng, 3, 2, 0.5);
  const auto h = testgen::random_graph(rng, 2, 4, 0.5);
  DtgwOptions opts;
  const auto model = exported_model(g, h, opts);
  CHECK(model.nv == 3);
  CHECK(model.nw == 2);
  CHECK(model.t == 2);
  CHECK(model.u == 4);
  CHECK(model.m_vars.size() == 12);
  CHECK(model.w_vars.size() == 8);
  // a per G vertex, b per H vertex, c, d grid, e last row, f last column
  CHECK(model.constraints.size() == 3u + 2u + 1u + 3u + 3u + 1u);
  CHECK(oracle::qp_brute_min(model) ==
        doctest::Approx(exact_dtgw(g, h, opts).distance).epsilon(1e-9));
}

TEST_CASE("exporter rejects invalid graphs") {
  const auto bad = testgen::graph({"a", "a"}, {{}});
  const auto ok = testgen::graph({"a"}, {{}});
  std::stringstream buf;
  CHECK_THROWS_AS(export_qp(bad, ok, DtgwOptions{}, buf), InputError);
  CHECK_THROWS_AS(export_qp(ok, bad, DtgwOptions{}, buf), InputError);
}
