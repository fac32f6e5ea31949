// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <atomic>
#include <set>
#include <stdexcept>

#include "recomp/common/error.hpp"
#include "recomp/common/hash.hpp"
#include "recomp/common/io.hpp"
#include "recomp/common/parallel.hpp"
#include "recomp/common/ranking.hpp"
#include "recomp/common/rng.hpp"
#include "recomp/common/toml_lite.hpp"
#include "support.hpp"

using namespace recomp;

namespace {

const toml::Value& lookup(const toml::Document& doc, std::string_view key) {
  for (const auto& [k, v] : doc) {
    if (k == key) return v;
  }
  throw std::runtime_error("missing key " + std::string(key));
}

}  // namespace

TEST_CASE("fnv1a64 matches published test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("derive_seed separates salts") {
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));
}

TEST_CASE("Rng is reproducible and in range") {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng r(3);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(r.below(5) < 5);
  }
  std::vector<int> v{1, 2, 3, 4, 5, 6};
  r.shuffle(v);
  CHECK(std::multiset<int>(v.begin(), v.end()) == std::multiset<int>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("Rng normal has unit moments") {
  Rng r(11);
  double sum = 0.0, sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    sum += x;
    sq += x * x;
  }
  CHECK(sum / n == doctest::Approx(0.0).epsilon(0.03));
  CHECK(sq / n == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("rank_descending is stable on ties") {
  const std::vector<double> s{1.0, 3.0, 3.0, 2.0, 1.0};
  CHECK(rank_descending(s) == std::vector<std::size_t>{1, 2, 3, 0, 4});
  CHECK(argmax_first(s) == 1);
}

TEST_CASE("parallel_for writes every index and rethrows") {
  std::vector<int> out(1000, 0);
  parallel_for(out.size(), 4, [&](std::size_t i) { out[i] = static_cast<int>(i) * 2; });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i) * 2);
  CHECK_THROWS_AS(parallel_for(100, 4,
                               [](std::size_t i) {
                                 if (i == 37) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
  std::atomic<int> calls{0};
  parallel_for(0, 4, [&](std::size_t) { ++calls; });
  CHECK(calls == 0);
}

TEST_CASE("atomic write and JSONL round trip") {
  test::TempDir dir("io");
  const auto p = dir / "rows.jsonl";
  const std::vector<json> rows{{{"a", 1}}, {{"b", "x"}}};
  write_file_atomic(p, to_jsonl(rows));
  CHECK(read_file(p) == "{\"a\":1}\n{\"b\":\"x\"}\n");
  std::vector<json> back;
  read_jsonl(p, [&](std::size_t, const json& j) { back.push_back(j); });
  CHECK(back == rows);
  for (const auto& e : std::filesystem::directory_iterator(dir.path())) {
    CHECK(e.path().filename() == "rows.jsonl");
  }
}

TEST_CASE("read_jsonl flags malformed lines and non-objects") {
  test::TempDir dir("io");
  test::write_text(dir / "a.jsonl", "{\"a\":1}\n\n[1,2]\n");
  try {
    read_jsonl(dir / "a.jsonl", [](std::size_t, const json&) {});
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(read_file(dir / "missing"), Error);
}

TEST_CASE("binary writer and reader agree") {
  BinaryWriter w;
  w.u8(7);
  w.u32(0xdeadbeef);
  w.u64(1ULL << 40);
  w.f32(1.5f);
  w.f64(-2.25);
  w.str("hello");
  BinaryReader r(w.data(), "mem");
  CHECK(r.u8() == 7);
  CHECK(r.u32() == 0xdeadbeef);
  CHECK(r.u64() == (1ULL << 40));
  CHECK(r.f32() == 1.5f);
  CHECK(r.f64() == -2.25);
  CHECK(r.str() == "hello");
  CHECK(r.at_end());
  CHECK_THROWS_AS(r.u8(), Error);
  CHECK(static_cast<unsigned char>(w.data()[1]) == 0xef);
}

TEST_CASE("toml subset: scalars, tables and arrays") {
  const auto doc = toml::parse(R"(# leading comment
top = "level"
[run]
seed = 13   # trailing comment
ratio = 0.5
neg = -2
on = true
[paths.sub]
lit = 'C:\raw'
esc = "a\tb\n\"q\""
list = [1, "two", 3.0, false]
multi = """
line one
line two"""
)");
  CHECK(std::get<std::string>(lookup(doc, "top").data) == "level");
  CHECK(std::get<std::int64_t>(lookup(doc, "run.seed").data) == 13);
  CHECK(std::get<double>(lookup(doc, "run.ratio").data) == 0.5);
  CHECK(std::get<std::int64_t>(lookup(doc, "run.neg").data) == -2);
  CHECK(std::get<bool>(lookup(doc, "run.on").data));
  CHECK(std::get<std::string>(lookup(doc, "paths.sub.lit").data) == "C:\\raw");
  CHECK(std::get<std::string>(lookup(doc, "paths.sub.esc").data) == "a\tb\n\"q\"");
  const auto& list = std::get<std::vector<toml::Scalar>>(lookup(doc, "paths.sub.list").data);
  REQUIRE(list.size() == 4);
  CHECK(std::get<std::int64_t>(list[0]) == 1);
  CHECK(std::get<std::string>(list[1]) == "two");
  CHECK(std::get<bool>(list[3]) == false);
  CHECK(std::get<std::string>(lookup(doc, "paths.sub.multi").data) == "line one\nline two");
  CHECK(lookup(doc, "run.seed").line == 4);
}

TEST_CASE("toml subset rejects bad input with a line number") {
  auto line_of = [](std::string_view text) -> std::size_t {
    try {
      toml::parse(text, "t");
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("a = 1\na = 2\n") == 2);
  CHECK(line_of("a = 1\n[t\n") == 2);
  CHECK(line_of("x = \"open\n") == 1);
  CHECK(line_of("novalue\n") == 1);
  CHECK(line_of("k = nope\n") == 1);
}

TEST_CASE("toml quote round trips through the parser") {
  const std::string s = "tab\tquote\"back\\slash\nnl";
  const auto doc = toml::parse("k = " + toml::quote(s) + "\n");
  CHECK(std::get<std::string>(lookup(doc, "k").data) == s);
}
