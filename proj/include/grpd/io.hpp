#ifndef GRPD_IO_HPP
#define GRPD_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "grpd/bisection.hpp"
#include "grpd/comorphism.hpp"
#include "grpd/functor.hpp"
#include "grpd/types.hpp"

// Plain-text formats. Tokens are whitespace separated and `#` starts a
// comment. Syntax errors throw ParseError with a 1-based line and column;
// well-formed input that breaks a law throws LawViolation.
//
//   grpd 1                comor 1                  bis 1
//   objects <n>           dom <path> | dom inline  c <obj> <mor>
//   m <id> <src> <tgt>      ... end                ...
//   id <obj> <mor>        cod <path> | cod inline
//   inv <mor> <mor>         ... end                func 1
//   cmp <b> <a> <b∘a>     obj <H-obj> <G-obj>      dom ... / cod ...
//                         lift <H-obj> <G-mor> <H-mor>   obj <x> <y>
//                                                  mor <a> <b>
//
// Paths are relative to `base_dir`. Serialization is canonical: every
// list is in ascending identifier order and nested groupoids are inline.
namespace grpd::io {

  GroupoidPtr parse_groupoid(std::string_view text);
  std::string serialize_groupoid(FiniteGroupoid const& g);

  Comorphism  parse_comorphism(std::string_view text, std::filesystem::path const& base_dir = {});
  std::string serialize_comorphism(Comorphism const& f);

  Functor     parse_functor(std::string_view text, std::filesystem::path const& base_dir = {});
  std::string serialize_functor(Functor const& f);

  Bisection   parse_bisection(std::string_view text, GroupoidPtr const& carrier);
  std::string serialize_bisection(Bisection const& alpha);

  // Throws ParseError (line 0) if the file cannot be read.
  std::string read_file(std::filesystem::path const& path);

  GroupoidPtr read_groupoid(std::filesystem::path const& path);
  Comorphism  read_comorphism(std::filesystem::path const& path);

}  // namespace grpd::io

#endif  // GRPD_IO_HPP
