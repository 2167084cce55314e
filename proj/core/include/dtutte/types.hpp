#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace dtutte {

// Typed index into one of the Triangulation tables. Default constructed ids
// are invalid (value -1), which is how an absent twin is represented.
template <class Tag>
struct Id {
  int32_t value = -1;

  constexpr Id() = default;
  constexpr explicit Id(int32_t v) : value(v) {}
  constexpr bool valid() const { return value >= 0; }
  constexpr explicit operator bool() const { return valid(); }
  friend constexpr auto operator<=>(Id, Id) = default;
};

using HalfEdge = Id<struct HalfEdgeTag>;
using Vertex = Id<struct VertexTag>;
using Face = Id<struct FaceTag>;

enum class Color : uint8_t { Red, Blue };

constexpr Color opposite(Color c) { return c == Color::Red ? Color::Blue : Color::Red; }
constexpr char color_char(Color c) { return c == Color::Red ? 'r' : 'b'; }

enum class Side : uint8_t { Left, Right };

// Thrown for malformed tables or unparsable input: the object could not even
// be built. Validation failures of well-formed objects are reported as values.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition of a domain operation does not hold (boundary turn, closed
// host where a boundary is required, stale move, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Something the theory guarantees did not happen. Always a bug or a
// counterexample; never swallowed.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dtutte

template <class Tag>
struct std::hash<dtutte::Id<Tag>> {
  size_t operator()(dtutte::Id<Tag> id) const noexcept { return std::hash<int32_t>{}(id.value); }
};
