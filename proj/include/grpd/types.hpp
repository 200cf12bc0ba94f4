#ifndef GRPD_TYPES_HPP
#define GRPD_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace grpd {

  using object_type   = std::uint32_t;
  using morphism_type = std::uint32_t;

  // Marks an absent entry in a partial table.
  inline constexpr std::uint32_t UNDEFINED
      = std::numeric_limits<std::uint32_t>::max();

  class FiniteGroupoid;
  using GroupoidPtr = std::shared_ptr<FiniteGroupoid const>;

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A table or map fails one of the laws of its structure. `law()` is a short
  // stable name ("inverse law", "associativity", ...); `witnesses()` lists the
  // identifiers involved, in the order they appear in the message.
  class LawViolation : public Error {
   public:
    LawViolation(std::string law,
                 std::vector<std::uint32_t> witnesses,
                 std::string const& detail)
        : Error(law + ": " + detail),
          _law(std::move(law)),
          _witnesses(std::move(witnesses)) {}

    std::string const& law() const noexcept {
      return _law;
    }
    std::vector<std::uint32_t> const& witnesses() const noexcept {
      return _witnesses;
    }

   private:
    std::string                _law;
    std::vector<std::uint32_t> _witnesses;
  };

  class CapExceeded : public Error {
   public:
    CapExceeded(std::string cap, std::size_t limit, std::size_t needed)
        : Error("cap exceeded: " + cap + " (limit " + std::to_string(limit)
                + ", needed at least " + std::to_string(needed) + ")"),
          _cap(std::move(cap)) {}

    std::string const& cap() const noexcept {
      return _cap;
    }

   private:
    std::string _cap;
  };

  // An operation was called on inputs that do not meet its precondition,
  // e.g. lower_star on a functor that is not bijective on objects.
  class PreconditionError : public Error {
   public:
    using Error::Error;
  };

  class ParseError : public Error {
   public:
    ParseError(std::size_t line, std::size_t column, std::string const& what)
        : Error("line " + std::to_string(line) + ", column "
                + std::to_string(column) + ": " + what),
          _line(line),
          _column(column) {}

    std::size_t line() const noexcept {
      return _line;
    }
    std::size_t column() const noexcept {
      return _column;
    }

   private:
    std::size_t _line;
    std::size_t _column;
  };

}  // namespace grpd

#endif  // GRPD_TYPES_HPP
