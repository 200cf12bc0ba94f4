#include "grpd/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "grpd/groupoid.hpp"

namespace grpd::io {

  namespace {
    struct Token {
      std::string text;
      std::size_t column;
    };

    struct Line {
      std::size_t        number;
      std::vector<Token> tokens;
    };

    using Lines = std::vector<Line>;

    Lines lex(std::string_view text) {
      Lines       out;
      std::size_t number = 0;
      std::size_t start  = 0;
      while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
          end = text.size();
        }
        auto raw = text.substr(start, end - start);
        ++number;
        Line line{number, {}};
        for (std::size_t i = 0; i < raw.size();) {
          if (raw[i] == '#') {
            break;
          }
          if (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r') {
            ++i;
            continue;
          }
          auto j = i;
          while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r' && raw[j] != '#') {
            ++j;
          }
          line.tokens.push_back({std::string(raw.substr(i, j - i)), i + 1});
          i = j;
        }
        if (!line.tokens.empty()) {
          out.push_back(std::move(line));
        }
        start = end + 1;
      }
      return out;
    }

    [[noreturn]] void fail(Line const& line, std::size_t token, std::string const& what) {
      auto column = token < line.tokens.size() ? line.tokens[token].column
                                               : (line.tokens.empty() ? 1 : line.tokens.back().column);
      throw ParseError(line.number, column, what);
    }

    void expect_arity(Line const& line, std::size_t n) {
      if (line.tokens.size() != n) {
        fail(line,
             std::min(line.tokens.size(), n),
             "'" + line.tokens[0].text + "' takes " + std::to_string(n - 1) + " argument(s)");
      }
    }

    std::uint32_t number(Line const& line, std::size_t i) {
      auto const&   s = line.tokens[i].text;
      std::uint32_t v = 0;
      auto [p, ec]    = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size() || v == UNDEFINED) {
        fail(line, i, "expected a non-negative integer, got '" + s + "'");
      }
      return v;
    }

    std::uint32_t bounded(Line const& line, std::size_t i, std::size_t limit, char const* what) {
      auto v = number(line, i);
      if (v >= limit) {
        fail(line, i, std::string(what) + " " + std::to_string(v) + " out of range");
      }
      return v;
    }

    void expect_header(Lines const& lines, std::size_t begin, std::size_t end, char const* kind) {
      if (begin == end) {
        throw ParseError(lines.empty() ? 1 : lines.back().number, 1, std::string("empty ") + kind + " document");
      }
      auto const& line = lines[begin];
      if (line.tokens[0].text != kind) {
        fail(line, 0, std::string("expected header '") + kind + " 1'");
      }
      expect_arity(line, 2);
      if (line.tokens[1].text != "1") {
        fail(line, 1, "unsupported version " + line.tokens[1].text);
      }
    }

    std::size_t last_line(Lines const& lines, std::size_t begin, std::size_t end) {
      return end > begin ? lines[end - 1].number : (lines.empty() ? 1 : lines.back().number);
    }

    GroupoidPtr parse_groupoid(Lines const& lines, std::size_t begin, std::size_t end) {
      expect_header(lines, begin, end, "grpd");
      GroupoidTables t;
      bool           have_objects = false;
      // First pass: objects and morphisms.
      for (auto i = begin + 1; i < end; ++i) {
        auto const& line = lines[i];
        auto const& key  = line.tokens[0].text;
        if (key == "objects") {
          expect_arity(line, 2);
          if (have_objects) {
            fail(line, 0, "duplicate 'objects' line");
          }
          have_objects = true;
          t.objects    = number(line, 1);
        } else if (key == "m") {
          expect_arity(line, 4);
        } else if (key != "id" && key != "inv" && key != "cmp") {
          fail(line, 0, "unknown keyword '" + key + "'");
        }
      }
      if (!have_objects) {
        throw ParseError(last_line(lines, begin, end), 1, "missing 'objects' line");
      }
      std::size_t m = 0;
      for (auto i = begin + 1; i < end; ++i) {
        m += lines[i].tokens[0].text == "m";
      }
      t.source.assign(m, UNDEFINED);
      t.target.assign(m, UNDEFINED);
      t.identity.assign(t.objects, UNDEFINED);
      t.inverse.assign(m, UNDEFINED);
      t.compose.assign(m * m, UNDEFINED);
      for (auto i = begin + 1; i < end; ++i) {
        auto const& line = lines[i];
        if (line.tokens[0].text == "m") {
          auto a = bounded(line, 1, m, "morphism");
          if (t.source[a] != UNDEFINED) {
            fail(line, 1, "duplicate morphism " + std::to_string(a));
          }
          t.source[a] = bounded(line, 2, t.objects, "object");
          t.target[a] = bounded(line, 3, t.objects, "object");
        }
      }
      // Second pass: structure maps.
      for (auto i = begin + 1; i < end; ++i) {
        auto const& line = lines[i];
        auto const& key  = line.tokens[0].text;
        if (key == "id") {
          expect_arity(line, 3);
          auto u = bounded(line, 1, t.objects, "object");
          if (t.identity[u] != UNDEFINED) {
            fail(line, 1, "duplicate identity for object " + std::to_string(u));
          }
          t.identity[u] = bounded(line, 2, m, "morphism");
        } else if (key == "inv") {
          expect_arity(line, 3);
          auto a = bounded(line, 1, m, "morphism");
          if (t.inverse[a] != UNDEFINED) {
            fail(line, 1, "duplicate inverse for morphism " + std::to_string(a));
          }
          t.inverse[a] = bounded(line, 2, m, "morphism");
        } else if (key == "cmp") {
          expect_arity(line, 4);
          auto b = bounded(line, 1, m, "morphism");
          auto a = bounded(line, 2, m, "morphism");
          if (t.target[a] != t.source[b]) {
            fail(line, 1, "morphisms " + std::to_string(b) + " and " + std::to_string(a) + " are not composable");
          }
          if (t.compose[b * m + a] != UNDEFINED) {
            fail(line, 1, "duplicate composite for " + std::to_string(b) + " " + std::to_string(a));
          }
          t.compose[b * m + a] = bounded(line, 3, m, "morphism");
        }
      }
      auto const at_end = last_line(lines, begin, end);
      for (std::size_t u = 0; u < t.objects; ++u) {
        if (t.identity[u] == UNDEFINED) {
          throw ParseError(at_end, 1, "missing identity for object " + std::to_string(u));
        }
      }
      for (std::size_t a = 0; a < m; ++a) {
        if (t.inverse[a] == UNDEFINED) {
          throw ParseError(at_end, 1, "missing inverse for morphism " + std::to_string(a));
        }
        for (std::size_t b = 0; b < m; ++b) {
          if (t.target[a] == t.source[b] && t.compose[b * m + a] == UNDEFINED) {
            throw ParseError(at_end,
                             1,
                             "missing composite for " + std::to_string(b) + " " + std::to_string(a));
          }
        }
      }
      return FiniteGroupoid::make(std::move(t));
    }

    // Handles `dom ...` / `cod ...`, consuming an inline block if present.
    GroupoidPtr parse_operand(Lines const&                 lines,
                              std::size_t&                 i,
                              std::size_t                  end,
                              std::filesystem::path const& base_dir) {
      auto const& line = lines[i];
      expect_arity(line, 2);
      if (line.tokens[1].text != "inline") {
        auto path = base_dir / line.tokens[1].text;
        try {
          return read_groupoid(path);
        } catch (ParseError const& e) {
          fail(line, 1, "in " + line.tokens[1].text + ": " + e.what());
        }
      }
      auto start = i + 1;
      auto stop  = start;
      while (stop < end && !(lines[stop].tokens.size() == 1 && lines[stop].tokens[0].text == "end")) {
        ++stop;
      }
      if (stop == end) {
        fail(line, 1, "inline block is not closed by 'end'");
      }
      i = stop;
      return parse_groupoid(lines, start, stop);
    }

    void indent(std::ostringstream& out, std::string const& text) {
      std::istringstream in(text);
      std::string        s;
      while (std::getline(in, s)) {
        if (!s.empty() && s[0] != '#') {
          out << "  " << s << '\n';
        }
      }
    }
  }  // namespace

  GroupoidPtr parse_groupoid(std::string_view text) {
    auto lines = lex(text);
    return parse_groupoid(lines, 0, lines.size());
  }

  std::string serialize_groupoid(FiniteGroupoid const& g) {
    std::ostringstream out;
    auto const         m = g.number_of_morphisms();
    out << "# cmp b a c means c = b o a, with a applied first\n";
    out << "grpd 1\n";
    out << "objects " << g.number_of_objects() << '\n';
    for (morphism_type a = 0; a < m; ++a) {
      out << "m " << a << ' ' << g.source(a) << ' ' << g.target(a) << '\n';
    }
    for (object_type u = 0; u < g.number_of_objects(); ++u) {
      out << "id " << u << ' ' << g.identity(u) << '\n';
    }
    for (morphism_type a = 0; a < m; ++a) {
      out << "inv " << a << ' ' << g.inverse(a) << '\n';
    }
    for (morphism_type b = 0; b < m; ++b) {
      for (morphism_type a = 0; a < m; ++a) {
        auto c = g.compose(b, a);
        if (c != UNDEFINED) {
          out << "cmp " << b << ' ' << a << ' ' << c << '\n';
        }
      }
    }
    return out.str();
  }

  Comorphism parse_comorphism(std::string_view text, std::filesystem::path const& base_dir) {
    auto lines = lex(text);
    expect_header(lines, 0, lines.size(), "comor");
    GroupoidPtr dom, cod;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      auto const& key = lines[i].tokens[0].text;
      if (key == "dom" || key == "cod") {
        auto& slot = key == "dom" ? dom : cod;
        if (slot) {
          fail(lines[i], 0, "duplicate '" + key + "'");
        }
        slot = parse_operand(lines, i, lines.size(), base_dir);
      } else if (key != "obj" && key != "lift") {
        fail(lines[i], 0, "unknown keyword '" + key + "'");
      }
    }
    auto const at_end = lines.back().number;
    if (!dom || !cod) {
      throw ParseError(at_end, 1, dom ? "missing 'cod'" : "missing 'dom'");
    }
    std::vector<object_type>                  objects(cod->number_of_objects(), UNDEFINED);
    std::vector<std::array<std::uint32_t, 3>> lifts;
    std::vector<char>                         seen(cod->number_of_objects() * dom->number_of_morphisms());
    // Skip the inline blocks again while reading the maps.
    for (std::size_t i = 1; i < lines.size(); ++i) {
      auto const& line = lines[i];
      auto const& key  = line.tokens[0].text;
      if ((key == "dom" || key == "cod") && line.tokens.size() == 2 && line.tokens[1].text == "inline") {
        while (!(lines[i].tokens.size() == 1 && lines[i].tokens[0].text == "end")) {
          ++i;
        }
      } else if (key == "obj") {
        expect_arity(line, 3);
        auto u = bounded(line, 1, cod->number_of_objects(), "object");
        if (objects[u] != UNDEFINED) {
          fail(line, 1, "duplicate image for object " + std::to_string(u));
        }
        objects[u] = bounded(line, 2, dom->number_of_objects(), "object");
      } else if (key == "lift") {
        expect_arity(line, 4);
        auto u = bounded(line, 1, cod->number_of_objects(), "object");
        auto a = bounded(line, 2, dom->number_of_morphisms(), "morphism");
        auto b = bounded(line, 3, cod->number_of_morphisms(), "morphism");
        if (seen[u * dom->number_of_morphisms() + a]) {
          fail(line, 1, "duplicate lift");
        }
        seen[u * dom->number_of_morphisms() + a] = true;
        lifts.push_back({u, a, b});
      }
    }
    for (std::size_t u = 0; u < objects.size(); ++u) {
      if (objects[u] == UNDEFINED) {
        throw ParseError(at_end, 1, "missing image for object " + std::to_string(u));
      }
    }
    return Comorphism::from_triples(dom, cod, std::move(objects), lifts);
  }

  std::string serialize_comorphism(Comorphism const& f) {
    std::ostringstream out;
    auto const&        g = *f.dom();
    out << "comor 1\n";
    out << "dom inline\n";
    indent(out, serialize_groupoid(g));
    out << "end\n";
    out << "cod inline\n";
    indent(out, serialize_groupoid(*f.cod()));
    out << "end\n";
    for (object_type u = 0; u < f.object_map().size(); ++u) {
      out << "obj " << u << ' ' << f.object(u) << '\n';
    }
    for (object_type u = 0; u < f.object_map().size(); ++u) {
      for (auto a : g.out(f.object(u))) {
        out << "lift " << u << ' ' << a << ' ' << f.lift(a, u) << '\n';
      }
    }
    return out.str();
  }

  Functor parse_functor(std::string_view text, std::filesystem::path const& base_dir) {
    auto lines = lex(text);
    expect_header(lines, 0, lines.size(), "func");
    GroupoidPtr dom, cod;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      auto const& key = lines[i].tokens[0].text;
      if (key == "dom" || key == "cod") {
        auto& slot = key == "dom" ? dom : cod;
        if (slot) {
          fail(lines[i], 0, "duplicate '" + key + "'");
        }
        slot = parse_operand(lines, i, lines.size(), base_dir);
      } else if (key != "obj" && key != "mor") {
        fail(lines[i], 0, "unknown keyword '" + key + "'");
      }
    }
    auto const at_end = lines.back().number;
    if (!dom || !cod) {
      throw ParseError(at_end, 1, dom ? "missing 'cod'" : "missing 'dom'");
    }
    std::vector<object_type>   objects(dom->number_of_objects(), UNDEFINED);
    std::vector<morphism_type> morphisms(dom->number_of_morphisms(), UNDEFINED);
    for (std::size_t i = 1; i < lines.size(); ++i) {
      auto const& line = lines[i];
      auto const& key  = line.tokens[0].text;
      if ((key == "dom" || key == "cod") && line.tokens.size() == 2 && line.tokens[1].text == "inline") {
        while (!(lines[i].tokens.size() == 1 && lines[i].tokens[0].text == "end")) {
          ++i;
        }
      } else if (key == "obj" || key == "mor") {
        expect_arity(line, 3);
        bool  obj   = key == "obj";
        auto& slot  = obj ? objects : morphisms;
        auto  x     = bounded(line, 1, slot.size(), obj ? "object" : "morphism");
        auto  limit = obj ? cod->number_of_objects() : cod->number_of_morphisms();
        if (slot[x] != UNDEFINED) {
          fail(line, 1, "duplicate image for " + std::to_string(x));
        }
        slot[x] = bounded(line, 2, limit, obj ? "object" : "morphism");
      }
    }
    for (std::size_t x = 0; x < objects.size(); ++x) {
      if (objects[x] == UNDEFINED) {
        throw ParseError(at_end, 1, "missing image for object " + std::to_string(x));
      }
    }
    for (std::size_t x = 0; x < morphisms.size(); ++x) {
      if (morphisms[x] == UNDEFINED) {
        throw ParseError(at_end, 1, "missing image for morphism " + std::to_string(x));
      }
    }
    return Functor::make(dom, cod, std::move(objects), std::move(morphisms));
  }

  std::string serialize_functor(Functor const& f) {
    std::ostringstream out;
    out << "func 1\n";
    out << "dom inline\n";
    indent(out, serialize_groupoid(*f.dom()));
    out << "end\n";
    out << "cod inline\n";
    indent(out, serialize_groupoid(*f.cod()));
    out << "end\n";
    for (object_type x = 0; x < f.object_map().size(); ++x) {
      out << "obj " << x << ' ' << f.object(x) << '\n';
    }
    for (morphism_type a = 0; a < f.morphism_map().size(); ++a) {
      out << "mor " << a << ' ' << f.morphism(a) << '\n';
    }
    return out.str();
  }

  Bisection parse_bisection(std::string_view text, GroupoidPtr const& carrier) {
    auto lines = lex(text);
    expect_header(lines, 0, lines.size(), "bis");
    std::vector<morphism_type> components(carrier->number_of_objects(), UNDEFINED);
    for (std::size_t i = 1; i < lines.size(); ++i) {
      auto const& line = lines[i];
      if (line.tokens[0].text != "c") {
        fail(line, 0, "unknown keyword '" + line.tokens[0].text + "'");
      }
      expect_arity(line, 3);
      auto u = bounded(line, 1, components.size(), "object");
      if (components[u] != UNDEFINED) {
        fail(line, 1, "duplicate component for object " + std::to_string(u));
      }
      components[u] = bounded(line, 2, carrier->number_of_morphisms(), "morphism");
    }
    for (std::size_t u = 0; u < components.size(); ++u) {
      if (components[u] == UNDEFINED) {
        throw ParseError(lines.back().number, 1, "missing component for object " + std::to_string(u));
      }
    }
    return Bisection::make(carrier, std::move(components));
  }

  std::string serialize_bisection(Bisection const& alpha) {
    std::ostringstream out;
    out << "bis 1\n";
    for (object_type u = 0; u < alpha.components().size(); ++u) {
      out << "c " << u << ' ' << alpha.component(u) << '\n';
    }
    return out.str();
  }

  std::string read_file(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw ParseError(0, 0, "cannot read " + path.string());
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  GroupoidPtr read_groupoid(std::filesystem::path const& path) {
    return parse_groupoid(read_file(path));
  }

  Comorphism read_comorphism(std::filesystem::path const& path) {
    return parse_comorphism(read_file(path), path.parent_path());
  }

}  // namespace grpd::io
