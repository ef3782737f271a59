// Copyright 2026 The connred Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <stdexcept>

#include "connred/topology.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace connred;
using V = std::vector<int>;

namespace {

V preds(ConnectionScheme s, int n) { return predecessors(s, n).predecessors; }

bool is_subset(const V& a, const V& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("predecessor examples") {
  CHECK(preds(ConnectionScheme::kDense, 5) == V{1, 2, 3, 4});
  CHECK(preds(ConnectionScheme::kShort1, 8) == V{1, 3, 5, 7});
  CHECK(preds(ConnectionScheme::kShort2, 8) == V{1, 5, 7});
  CHECK(preds(ConnectionScheme::kShort1, 7) == V{1, 2, 4, 6});
  CHECK(preds(ConnectionScheme::kShort2, 9) == V{8});
  CHECK(preds(ConnectionScheme::kShort2, 10) == V{3, 7, 9});
  for (auto s : all_schemes()) {
    CHECK(preds(s, 1).empty());
    CHECK(predecessors(s, 1).layer == 1);
  }
}

TEST_CASE("non-positive layer index is a domain error") {
  for (auto s : all_schemes()) {
    CHECK_THROWS_AS(predecessors(s, 0), std::domain_error);
    CHECK_THROWS_AS(predecessors(s, -3), std::domain_error);
    CHECK_THROWS_AS(connection_count(s, 0), std::domain_error);
  }
}

TEST_CASE("rules agree with brute-force membership tests") {
  for (auto s : all_schemes()) {
    for (int n = 1; n <= 128; ++n) {
      CHECK_MESSAGE(preds(s, n) == testing::brute_predecessors(s, n),
                    to_string(s) << " n=" << n);
    }
  }
}

TEST_CASE("predecessor sets are strictly ascending and in range") {
  for (auto s : all_schemes()) {
    for (int n = 1; n <= 200; ++n) {
      const V p = preds(s, n);
      CHECK(std::adjacent_find(p.begin(), p.end(), std::greater_equal<>()) == p.end());
      for (int m : p) {
        CHECK(m >= 1);
        CHECK(m < n);
      }
    }
  }
}

TEST_CASE("subset chain SHORT2 <= SHORT1 <= DENSE") {
  for (int n = 1; n <= 64; ++n) {
    CHECK(is_subset(preds(ConnectionScheme::kShort2, n), preds(ConnectionScheme::kShort1, n)));
    CHECK(is_subset(preds(ConnectionScheme::kShort1, n), preds(ConnectionScheme::kDense, n)));
  }
}

TEST_CASE("SHORT1 parity property") {
  for (int n = 1; n <= 64; ++n) {
    for (int m : preds(ConnectionScheme::kShort1, n)) {
      if (n % 2 == 0) {
        CHECK(m % 2 == 1);
      } else {
        CHECK((m == 1 || m % 2 == 0));
      }
    }
  }
}

TEST_CASE("SHORT2 offset property") {
  for (int n = 2; n <= 64; ++n) {
    V expected;
    if (n % 2 == 1) {
      expected = {n - 1};
    } else {
      for (int i = 1; (1 << i) - 1 < n; ++i) expected.push_back(n - ((1 << i) - 1));
      std::sort(expected.begin(), expected.end());
    }
    CHECK(preds(ConnectionScheme::kShort2, n) == expected);
  }
}

TEST_CASE("SHORT2 reaches beyond the fixed exponent cap for long blocks") {
  // offset 63 = 2^6 - 1 only exists when n > 63
  const V p = preds(ConnectionScheme::kShort2, 64);
  CHECK(p.front() == 1);
  CHECK(p == V{1, 33, 49, 57, 61, 63});
}

TEST_CASE("connection counts") {
  CHECK(connection_count(ConnectionScheme::kDense, 8) == 28);
  CHECK(connection_count(ConnectionScheme::kShort1, 8) == 19);
  CHECK(connection_count(ConnectionScheme::kShort2, 8) == 11);
  CHECK(connection_count(ConnectionScheme::kShort1, 32) == 271);
  for (int L = 1; L <= 64; ++L) {
    CHECK(connection_count(ConnectionScheme::kDense, L) == std::int64_t{L} * (L - 1) / 2);
  }
  for (int L : {16, 24, 32}) {
    const double ratio = static_cast<double>(connection_count(ConnectionScheme::kShort1, L)) /
                         static_cast<double>(connection_count(ConnectionScheme::kDense, L));
    CHECK(ratio >= 0.50);
    CHECK(ratio <= 0.60);
  }
}

TEST_CASE("scheme ordering and names") {
  CHECK(ConnectionScheme::kDense > ConnectionScheme::kShort1);
  CHECK(ConnectionScheme::kShort1 > ConnectionScheme::kShort2);
  for (auto s : all_schemes()) CHECK(parse_scheme(to_string(s)) == s);
  CHECK_THROWS_AS(parse_scheme("sparse"), std::invalid_argument);
}

TEST_CASE("determinism") {
  for (auto s : all_schemes()) {
    for (int n = 1; n <= 40; ++n) CHECK(predecessors(s, n) == predecessors(s, n));
  }
}
