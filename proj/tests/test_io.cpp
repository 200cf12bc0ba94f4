#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "grpd/bisection.hpp"
#include "grpd/comorphism.hpp"
#include "grpd/group.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/io.hpp"
#include "oracles.hpp"

using namespace grpd;

namespace {
  std::filesystem::path const data = GRPD_TEST_DATA;

  struct Where {
    std::size_t line;
    std::size_t column;
    std::string what;
  };

  template <typename F>
  Where parse_error(F&& f) {
    try {
      f();
    } catch (ParseError const& e) {
      return {e.line(), e.column(), e.what()};
    }
    FAIL("no parse error");
    return {};
  }

  char const* const header = "grpd 1\nobjects 1\nm 0 0 0\nid 0 0\ninv 0 0\n";
}  // namespace

TEST_CASE("groupoid round trips") {
  for (auto const& [name, g] : oracle::corpus()) {
    CAPTURE(name);
    auto text = io::serialize_groupoid(*g);
    auto back = io::parse_groupoid(text);
    CHECK(same_groupoid(back, g));
    CHECK(io::serialize_groupoid(*back) == text);
  }
  CHECK(same_groupoid(io::parse_groupoid(io::serialize_groupoid(*empty_groupoid())), empty_groupoid()));
}

TEST_CASE("checked-in data files are canonical") {
  for (auto name : {"discrete2", "indiscrete2", "indiscrete3", "sigma_z2", "sigma_z3"}) {
    CAPTURE(name);
    auto path = data / (std::string(name) + ".grpd");
    auto g    = io::read_groupoid(path);
    CHECK(io::serialize_groupoid(*g) == io::read_file(path));
  }
  CHECK(same_groupoid(io::read_groupoid(data / "indiscrete3.grpd"), indiscrete(3)));
  CHECK(same_groupoid(io::read_groupoid(data / "sigma_z3.grpd"), sigma(cyclic_group(3))));
}

TEST_CASE("comments and whitespace") {
  auto g = io::parse_groupoid("# leading comment\n\n  grpd   1 # trailing\nobjects 1\n\tm 0 0 0\nid 0 0\ninv 0 0\ncmp 0 0 0\n");
  CHECK(same_groupoid(g, terminal()));
  // Lines may come in any order after the header.
  auto h = io::parse_groupoid("grpd 1\ncmp 0 0 0\ninv 0 0\nid 0 0\nm 0 0 0\nobjects 1\n");
  CHECK(same_groupoid(h, terminal()));
}

TEST_CASE("parse errors carry line and column") {
  auto e = parse_error([] { io::parse_groupoid("grpd 2\n"); });
  CHECK(e.line == 1);
  CHECK(e.column == 6);

  e = parse_error([] { io::parse_groupoid("# nothing\ngroupoid 1\n"); });
  CHECK(e.line == 2);
  CHECK(e.column == 1);

  e = parse_error([] { io::parse_groupoid(std::string(header) + "cmp 0 x 0\n"); });
  CHECK(e.line == 6);
  CHECK(e.column == 7);
  CHECK(e.what.find("'x'") != std::string::npos);

  e = parse_error([] { io::parse_groupoid(std::string(header) + "  frob 1\n"); });
  CHECK(e.line == 6);
  CHECK(e.column == 3);
  CHECK(e.what.find("unknown keyword") != std::string::npos);

  e = parse_error([] { io::parse_groupoid("grpd 1\nm 0 0 0\n"); });
  CHECK(e.what.find("missing 'objects' line") != std::string::npos);

  e = parse_error([] { io::parse_groupoid(std::string(header) + "m 0 0 0\ncmp 0 0 0\n"); });
  CHECK(e.line == 6);
  CHECK(e.what.find("duplicate morphism 0") != std::string::npos);

  e = parse_error([] { io::parse_groupoid(std::string(header) + "id 3 0\ncmp 0 0 0\n"); });
  CHECK(e.line == 6);
  CHECK(e.what.find("out of range") != std::string::npos);

  e = parse_error([] { io::parse_groupoid(std::string(header) + "cmp 0 0 0\ncmp 0 0 0\n"); });
  CHECK(e.line == 7);
  CHECK(e.what.find("duplicate composite") != std::string::npos);

  e = parse_error([] { io::parse_groupoid(std::string(header) + "cmp 0 0 0 0\n"); });
  CHECK(e.line == 6);

  e = parse_error([] { io::read_groupoid(data / "truncated.grpd"); });
  CHECK(e.line == 9);
  CHECK(e.column == 1);
  CHECK(e.what.find("missing composite for 1 1") != std::string::npos);

  e = parse_error([] { io::read_groupoid(data / "no_such_file.grpd"); });
  CHECK(e.line == 0);
}

TEST_CASE("well-formed files that break a law") {
  try {
    io::read_groupoid(data / "bad_inverse.grpd");
    FAIL("accepted a bad inverse");
  } catch (LawViolation const& e) {
    CHECK(e.law() == "inverse law");
  }
  // Identity lifts in the wrong place.
  auto text = std::string("comor 1\ndom inline\n") + io::serialize_groupoid(*indiscrete(2))
            + "end\ncod inline\n" + io::serialize_groupoid(*indiscrete(2))
            + "end\nobj 0 0\nobj 1 1\nlift 0 0 1\nlift 0 1 1\nlift 1 2 2\nlift 1 3 3\n";
  CHECK_THROWS_AS(io::parse_comorphism(text), LawViolation);
}

TEST_CASE("comorphism files") {
  auto f = io::read_comorphism(data / "swap.comor");
  CHECK(same_groupoid(f.dom(), sigma(cyclic_group(2))));
  CHECK(same_groupoid(f.cod(), indiscrete(2)));
  // The generator of Z2 acts by the swap bisection.
  auto images = adjunction_forward(f);
  REQUIRE(images.size() == 2);
  CHECK(images[1].components() == std::vector<morphism_type>{1, 2});

  auto text = io::serialize_comorphism(f);
  auto back = io::parse_comorphism(text);
  CHECK(back == f);
  CHECK(io::serialize_comorphism(back) == text);

  auto e = parse_error([] { io::parse_comorphism("comor 1\ndom missing.grpd\n", data); });
  CHECK(e.line == 2);
  CHECK(e.what.find("missing.grpd") != std::string::npos);

  e = parse_error([] { io::parse_comorphism("comor 1\ndom inline\ngrpd 1\nobjects 1\n"); });
  CHECK(e.what.find("'end'") != std::string::npos);
}

TEST_CASE("every small comorphism and functor round trips") {
  auto small = oracle::corpus_up_to(2);
  for (auto const& [gn, g] : small) {
    for (auto const& [hn, h] : small) {
      for (auto const& f : enumerate_comorphisms(g, h)) {
        auto text = io::serialize_comorphism(f);
        CHECK(io::parse_comorphism(text) == f);
      }
      for (auto const& f : enumerate_functors(g, h)) {
        auto text = io::serialize_functor(f);
        auto back = io::parse_functor(text);
        CHECK(back == f);
        CHECK(io::serialize_functor(back) == text);
      }
    }
  }
}

TEST_CASE("bisection files") {
  auto z2 = io::read_groupoid(data / "sigma_z2.grpd");
  auto a  = io::parse_bisection(io::read_file(data / "flip.bis"), z2);
  CHECK(a.components() == std::vector<morphism_type>{1});
  auto g = io::read_groupoid(data / "indiscrete2.grpd");
  for (auto const& [name, h] : oracle::corpus_up_to(3)) {
    for (auto const& b : enumerate_bisections(h)) {
      auto text = io::serialize_bisection(b);
      CHECK(io::parse_bisection(text, h) == b);
      CHECK(io::serialize_bisection(io::parse_bisection(text, h)) == text);
    }
  }
  auto e = parse_error([&] { io::parse_bisection("bis 1\nc 0 1\n", g); });
  CHECK(e.what.find("missing component for object 1") != std::string::npos);
  CHECK_THROWS_AS(io::parse_bisection("bis 1\nc 0 1\nc 1 3\n", g), LawViolation);
}

TEST_CASE("relative paths resolve against the referencing file") {
  auto dir = std::filesystem::temp_directory_path() / "grpd_io_test";
  std::filesystem::create_directories(dir / "sub");
  std::filesystem::copy_file(data / "sigma_z2.grpd", dir / "sub" / "z2.grpd",
                             std::filesystem::copy_options::overwrite_existing);
  {
    std::ofstream out(dir / "id.comor");
    out << "comor 1\ndom sub/z2.grpd\ncod sub/z2.grpd\nobj 0 0\nlift 0 0 0\nlift 0 1 1\n";
  }
  auto f = io::read_comorphism(dir / "id.comor");
  CHECK(f == Comorphism::identity(f.dom()));
  std::filesystem::remove_all(dir);
}
