#include "grpd/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>

#include "grpd/bisection.hpp"
#include "grpd/comorphism.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/harness.hpp"
#include "grpd/io.hpp"
#include "grpd/pseudogroup.hpp"

namespace grpd::cli {

  namespace {
    namespace fs = std::filesystem;
    using json   = nlohmann::ordered_json;

    // A problem with the command line or an input file; always exit 2.
    struct InputError : std::runtime_error {
      using std::runtime_error::runtime_error;
    };

    struct Settings {
      std::string                  caps_text;
      UniverseCaps                 caps;
      bool                         json_output = false;
      std::optional<std::uint64_t> seed_order;
    };

    UniverseCaps parse_caps(std::string const& text) {
      std::vector<std::size_t> values;
      std::stringstream        in(text);
      std::string              item;
      while (std::getline(in, item, ',')) {
        std::size_t pos = 0;
        std::size_t v   = 0;
        try {
          v = std::stoull(item, &pos);
        } catch (std::exception const&) {
          pos = 0;
        }
        if (pos == 0 || pos != item.size() || v == 0 || item[0] == '-' || item[0] == '+') {
          throw InputError("--caps: '" + item + "' is not a positive integer");
        }
        values.push_back(v);
      }
      if (values.size() < 3 || values.size() > 4 || text.back() == ',') {
        throw InputError("--caps expects objects,morphisms,groupoids[,arrows]");
      }
      UniverseCaps caps;
      caps.max_objects   = values[0];
      caps.max_morphisms = values[1];
      caps.max_groupoids = values[2];
      if (values.size() == 4) {
        caps.max_arrows = values[3];
      }
      return caps;
    }

    template <typename F>
    auto load(std::string const& path, F&& parse) {
      try {
        return parse(fs::path(path));
      } catch (ParseError const& e) {
        if (e.line() == 0) {
          throw InputError("cannot read " + path);
        }
        throw InputError(path + ": " + e.what());
      }
    }

    GroupoidPtr load_groupoid(std::string const& path) {
      return load(path, [](fs::path const& p) { return io::read_groupoid(p); });
    }

    Comorphism load_comorphism(std::string const& path) {
      return load(path, [](fs::path const& p) { return io::read_comorphism(p); });
    }

    void check_size(GroupoidPtr const& g, UniverseCaps const& caps) {
      if (g->number_of_objects() > caps.max_objects) {
        throw CapExceeded("objects", caps.max_objects, g->number_of_objects());
      }
      if (g->number_of_morphisms() > caps.max_morphisms) {
        throw CapExceeded("morphisms", caps.max_morphisms, g->number_of_morphisms());
      }
    }

    std::string first_keyword(std::string const& text) {
      std::istringstream in(text);
      std::string        line;
      while (std::getline(in, line)) {
        line = line.substr(0, line.find('#'));
        std::istringstream words(line);
        std::string        word;
        if (words >> word) {
          return word;
        }
      }
      return {};
    }

    std::string id(std::uint32_t x) {
      return x == UNDEFINED ? "-" : std::to_string(x);
    }

    json id_json(std::uint32_t x) {
      return x == UNDEFINED ? json(nullptr) : json(x);
    }

    template <typename T>
    std::string joined(std::vector<T> const& xs) {
      std::string s;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        s += (i ? " " : "") + id(static_cast<std::uint32_t>(xs[i]));
      }
      return s;
    }

    char const* yes(bool b) {
      return b ? "yes" : "no";
    }

    ////////////////////////////////////////////////////////////////////////
    // Subcommands
    ////////////////////////////////////////////////////////////////////////

    int do_validate(std::string const& path, std::string const& carrier, std::ostream& out) {
      auto text = load(path, [](fs::path const& p) { return io::read_file(p); });
      auto kind = first_keyword(text);
      auto base = fs::path(path).parent_path();
      auto wrap = [&](auto&& f) {
        try {
          f();
        } catch (ParseError const& e) {
          throw InputError(path + ": " + e.what());
        }
      };
      if (kind == "grpd") {
        wrap([&] { io::parse_groupoid(text); });
      } else if (kind == "comor") {
        wrap([&] { io::parse_comorphism(text, base); });
      } else if (kind == "func") {
        wrap([&] { io::parse_functor(text, base); });
      } else if (kind == "bis") {
        if (carrier.empty()) {
          throw InputError("validating a bisection needs --carrier <groupoid-file>");
        }
        auto g = load_groupoid(carrier);
        wrap([&] { io::parse_bisection(text, g); });
      } else {
        throw InputError(path + ": unknown header '" + kind + "'");
      }
      out << "OK\n";
      return EXIT_OK;
    }

    int do_bisections(GroupoidPtr const& g, std::ostream& out) {
      auto bis = bisection_group(g);
      out << "order: " << bis.elements.size() << '\n';
      out << "bisections:\n";
      for (std::size_t i = 0; i < bis.elements.size(); ++i) {
        out << "  " << i << ": " << joined(bis.elements[i].components()) << '\n';
      }
      out << "table:\n";
      for (auto const& row : bis.group.table()) {
        out << "  " << joined(row) << '\n';
      }
      return EXIT_OK;
    }

    int do_pbis(GroupoidPtr const& g, bool table, std::ostream& out) {
      auto m     = pbis_monoid(g);
      auto atoms = boolean_atoms(m.view);
      out << "size: " << m.elements.size() << '\n';
      out << "atoms: " << (atoms ? joined(*atoms) : std::string("none")) << '\n';
      out << "complete atomic: " << yes(is_complete_atomic(m.view)) << '\n';
      out << "elements:\n";
      for (std::size_t i = 0; i < m.elements.size(); ++i) {
        out << "  " << i << ": " << joined(m.elements[i].components()) << '\n';
      }
      if (table) {
        out << "table:\n";
        for (std::size_t i = 0; i < m.view.size; ++i) {
          std::vector<std::size_t> row(m.view.table.begin() + i * m.view.size,
                                       m.view.table.begin() + (i + 1) * m.view.size);
          out << "  " << joined(row) << '\n';
        }
        out << "star: " << joined(m.view.star) << '\n';
      }
      return EXIT_OK;
    }

    void print_map(Functor const& f, std::ostream& out) {
      for (object_type x = 0; x < f.object_map().size(); ++x) {
        out << "obj " << x << ' ' << f.object(x) << '\n';
      }
      for (morphism_type a = 0; a < f.morphism_map().size(); ++a) {
        out << "mor " << a << ' ' << f.morphism(a) << '\n';
      }
    }

    void print_map(Comorphism const& f, std::ostream& out) {
      auto const& g = *f.dom();
      for (object_type u = 0; u < f.object_map().size(); ++u) {
        out << "obj " << u << ' ' << f.object(u) << '\n';
      }
      for (object_type u = 0; u < f.object_map().size(); ++u) {
        for (auto a : g.out(f.object(u))) {
          out << "lift " << u << ' ' << a << ' ' << f.lift(a, u) << '\n';
        }
      }
    }

    int do_factorize(Comorphism const& f, std::ostream& out) {
      auto fact  = factorize(f);
      bool exact = compose(lower_star(fact.to_cod), upper_star(fact.to_dom)) == f;
      out << "# intermediate groupoid; morphism k is the pair (u, a)\n";
      out << io::serialize_groupoid(*fact.intermediate);
      for (std::size_t k = 0; k < fact.morphisms.size(); ++k) {
        out << "pair " << k << ' ' << fact.morphisms[k].first << ' ' << fact.morphisms[k].second << '\n';
      }
      out << "# discrete opfibration to the domain\n";
      print_map(fact.to_dom, out);
      out << "# bijective-on-objects functor to the codomain\n";
      print_map(fact.to_cod, out);
      out << "recomposes: " << yes(exact) << '\n';
      return exact ? EXIT_OK : EXIT_FAIL;
    }

    int do_enumerate(GroupoidPtr const& g, GroupoidPtr const& h, bool functors, bool list, std::ostream& out) {
      std::size_t count = 0;
      auto        emit  = [&](auto const& xs) {
        count = xs.size();
        if (list) {
          for (std::size_t i = 0; i < xs.size(); ++i) {
            out << "# " << i << '\n';
            print_map(xs[i], out);
          }
        }
      };
      if (functors) {
        emit(enumerate_functors(g, h));
      } else {
        emit(enumerate_comorphisms(g, h));
      }
      out << (functors ? "functors: " : "comorphisms: ") << count << '\n';
      return EXIT_OK;
    }

    ////////////////////////////////////////////////////////////////////////
    // verify
    ////////////////////////////////////////////////////////////////////////

    struct Verdict {
      std::string                              check;
      UniverseStats                            universe;
      std::size_t                              families = 0;
      std::size_t                              expected = 0;
      std::string                              expected_label;
      std::vector<std::pair<std::string, bool>> flags;
      std::vector<std::vector<std::uint32_t>>  witnesses;
      bool                                     pass = false;
    };

    Verdict verify(std::string const& check, GroupoidPtr const& g, Settings const& s) {
      FamilySearchOptions options;
      options.seed_order = s.seed_order;
      Verdict v;
      v.check = check;
      if (check == "theorem1") {
        auto r           = verify_theorem1(g, s.caps, options);
        v.universe       = r.universe;
        v.families       = r.families;
        v.expected       = r.expected;
        v.expected_label = "Bis";
        v.flags          = {{"conjugation_natural", r.conjugation_natural},
                            {"extraction_inverts", r.extraction_inverts},
                            {"group_isomorphic", r.group_isomorphic}};
        for (auto const& alpha : r.bisections) {
          v.witnesses.push_back(alpha.components());
        }
        v.pass = r.pass;
      } else if (check == "prop1") {
        auto r           = verify_prop1(g, s.caps, options);
        v.universe       = r.universe;
        v.families       = r.families;
        v.expected       = 1;
        v.expected_label = "expected";
        v.flags          = {{"fixes_star", r.fixes_star},
                            {"fixes_generic_arrow", r.fixes_generic_arrow},
                            {"identity_only", r.identity_only}};
        v.pass           = r.pass;
      } else {
        auto r           = verify_partial(g, s.caps, options);
        v.universe       = r.universe;
        v.families       = r.families;
        v.expected       = r.expected;
        v.expected_label = "PBis";
        v.flags          = {{"conjugation_natural", r.conjugation_natural},
                            {"extraction_inverts", r.extraction_inverts},
                            {"monoid_isomorphic", r.monoid_isomorphic}};
        for (auto const& alpha : r.partial_bisections) {
          v.witnesses.push_back(alpha.components());
        }
        v.pass = r.pass;
      }
      return v;
    }

    void print_text(Verdict const& v, Settings const& s, std::ostream& out) {
      auto const& u = v.universe;
      out << "check: " << v.check << '\n';
      out << "caps: objects " << s.caps.max_objects << ", morphisms " << s.caps.max_morphisms
          << ", groupoids " << s.caps.max_groupoids << ", arrows " << s.caps.max_arrows << '\n';
      out << "universe: " << u.groupoids << " groupoids, " << u.arrows << " arrows, "
          << u.arrows_from_base << " out of the base\n";
      out << "closure: " << (u.fully_closed ? "complete" : "truncated by caps") << '\n';
      for (auto const& c : u.closures) {
        out << "  " << c.rule << ": added " << c.added << ", duplicates " << c.duplicates
            << ", capped " << c.capped << '\n';
      }
      out << "families: " << v.families << " (natural over this universe)\n";
      out << "expected: " << v.expected << '\n';
      for (auto const& [name, ok] : v.flags) {
        out << name << ": " << yes(ok) << '\n';
      }
      for (std::size_t i = 0; i < v.witnesses.size(); ++i) {
        out << "witness " << i << ": " << joined(v.witnesses[i]) << '\n';
      }
      out << "families: " << v.families << ", " << v.expected_label << ": " << v.expected << ", "
          << (v.pass ? "PASS" : "FAIL") << '\n';
    }

    void print_json(Verdict const& v, Settings const& s, std::ostream& out) {
      auto const& u = v.universe;
      json        closures = json::array();
      for (auto const& c : u.closures) {
        closures.push_back(
            {{"rule", c.rule}, {"added", c.added}, {"duplicates", c.duplicates}, {"capped", c.capped}});
      }
      json flags = json::object();
      for (auto const& [name, ok] : v.flags) {
        flags[name] = ok;
      }
      json witnesses = json::array();
      for (auto const& w : v.witnesses) {
        json row = json::array();
        for (auto x : w) {
          row.push_back(id_json(x));
        }
        witnesses.push_back(row);
      }
      json doc = {{"check", v.check},
                  {"caps",
                   {{"objects", s.caps.max_objects},
                    {"morphisms", s.caps.max_morphisms},
                    {"groupoids", s.caps.max_groupoids},
                    {"arrows", s.caps.max_arrows}}},
                  {"universe",
                   {{"groupoids", u.groupoids},
                    {"arrows", u.arrows},
                    {"arrows_from_base", u.arrows_from_base},
                    {"fully_closed", u.fully_closed},
                    {"closures", closures}}},
                  {"families", v.families},
                  {"expected", v.expected},
                  {"flags", flags},
                  {"witnesses", witnesses},
                  {"result", v.pass ? "PASS" : "FAIL"}};
      out << doc.dump(2) << '\n';
    }
  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite groupoids, comorphisms, bisections and pseudogroups.", "grpd"};
    app.require_subcommand(1);
    Settings s;

    auto add_caps = [&](CLI::App* sub) {
      sub->add_option("--caps", s.caps_text, "objects,morphisms,groupoids[,arrows]");
    };

    std::string path, carrier;
    auto*       validate = app.add_subcommand("validate", "Parse a file and check its laws");
    validate->add_option("file", path)->required();
    validate->add_option("--carrier", carrier, "Groupoid file for a bisection");

    auto* bisections = app.add_subcommand("bisections", "Print Bis(G) and its group table");
    bisections->add_option("groupoid", path)->required();
    add_caps(bisections);

    bool  table = false;
    auto* pbis  = app.add_subcommand("pbis", "Print PBis(G), its atoms and tables");
    pbis->add_option("groupoid", path)->required();
    pbis->add_flag("--table", table, "Also print the multiplication and star tables");
    add_caps(pbis);

    std::string second;
    auto*       compose_cmd = app.add_subcommand("compose", "Print the composite g o f of two comorphisms");
    compose_cmd->add_option("g", path)->required();
    compose_cmd->add_option("f", second)->required();

    auto* factorize_cmd = app.add_subcommand("factorize", "Split a comorphism into its two legs");
    factorize_cmd->add_option("comorphism", path)->required();

    auto* push = app.add_subcommand("pushforward", "Push a bisection forward along a comorphism");
    push->add_option("comorphism", path)->required();
    push->add_option("bisection", second)->required();

    bool  functors = false, list = false;
    auto* enumerate = app.add_subcommand("enumerate", "Count comorphisms (or functors) between groupoids");
    enumerate->add_option("dom", path)->required();
    enumerate->add_option("cod", second)->required();
    enumerate->add_flag("--functors", functors, "Enumerate functors instead");
    enumerate->add_flag("--list", list, "List every map");
    add_caps(enumerate);

    bool          theorem1 = false, prop1 = false, partial = false;
    std::uint64_t seed     = 0;
    auto*         verify_cmd = app.add_subcommand("verify", "Run a family-enumeration check");
    verify_cmd->add_option("groupoid", path)->required();
    verify_cmd->add_flag("--theorem1", theorem1, "Inner families vs bisections");
    verify_cmd->add_flag("--prop1", prop1, "Functor-mode families");
    verify_cmd->add_flag("--partial", partial, "Partial families vs partial bisections");
    verify_cmd->add_flag("--json", s.json_output, "Machine-readable report");
    auto* seed_opt = verify_cmd->add_option("--seed-order", seed, "Shuffle the search order");
    add_caps(verify_cmd);

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (CLI::ParseError const& e) {
      auto code = app.exit(e, out, err);
      return code == 0 ? EXIT_OK : EXIT_INPUT_ERROR;
    }

    try {
      if (!s.caps_text.empty()) {
        s.caps = parse_caps(s.caps_text);
      }
      if (*seed_opt) {
        s.seed_order = seed;
      }

      if (validate->parsed()) {
        try {
          return do_validate(path, carrier, out);
        } catch (LawViolation const& e) {
          err << "error: " << path << ": " << e.what() << '\n';
          return EXIT_FAIL;
        }
      }
      if (bisections->parsed()) {
        auto g = load_groupoid(path);
        check_size(g, s.caps);
        return do_bisections(g, out);
      }
      if (pbis->parsed()) {
        auto g = load_groupoid(path);
        check_size(g, s.caps);
        return do_pbis(g, table, out);
      }
      if (compose_cmd->parsed()) {
        auto g = load_comorphism(path);
        auto f = load_comorphism(second);
        if (!same_groupoid(g.dom(), f.cod())) {
          throw InputError("compose: the domain of g is not the codomain of f");
        }
        out << io::serialize_comorphism(compose(g, f));
        return EXIT_OK;
      }
      if (factorize_cmd->parsed()) {
        return do_factorize(load_comorphism(path), out);
      }
      if (push->parsed()) {
        auto f     = load_comorphism(path);
        auto alpha = load(second, [&](fs::path const& p) { return io::parse_bisection(io::read_file(p), f.dom()); });
        out << io::serialize_bisection(pushforward(f, alpha));
        return EXIT_OK;
      }
      if (enumerate->parsed()) {
        auto g = load_groupoid(path);
        auto h = load_groupoid(second);
        check_size(g, s.caps);
        check_size(h, s.caps);
        return do_enumerate(g, h, functors, list, out);
      }
      if (verify_cmd->parsed()) {
        if (theorem1 + prop1 + partial != 1) {
          throw InputError("verify needs exactly one of --theorem1, --prop1, --partial");
        }
        auto g = load_groupoid(path);
        check_size(g, s.caps);
        auto v = verify(theorem1 ? "theorem1" : prop1 ? "prop1" : "partial", g, s);
        if (s.json_output) {
          print_json(v, s, out);
        } else {
          print_text(v, s, out);
        }
        return v.pass ? EXIT_OK : EXIT_FAIL;
      }
    } catch (InputError const& e) {
      err << "error: " << e.what() << '\n';
    } catch (Error const& e) {
      err << "error: " << e.what() << '\n';
    }
    return EXIT_INPUT_ERROR;
  }

}  // namespace grpd::cli
