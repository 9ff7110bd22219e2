// Core tag types and error categories shared by all components.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nereval {

// Tagging schemes for serializing entity spans.
// IOB1: tokens inside an entity carry I-XXX; B-XXX appears only where two
//       same-type entities are immediately adjacent.
// IOB2: the first token of every entity carries B-XXX.
enum class Scheme { IOB1, IOB2 };

// Lenient reading repairs tag sequences that violate the scheme (a dangling
// I-XXX becomes a span start); strict reading rejects them.
enum class Strictness { Lenient, Strict };

Scheme scheme_from_string(std::string_view name);
std::string_view to_string(Scheme scheme);

/// Input text that cannot be parsed; the message names the source and line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tag sequence violates the declared scheme (strict mode only).
class SchemeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gold corpus and predicted tags do not have the same shape.
class AlignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Short uppercase label such as "PER" or "LOC". The set is open; labels must
// compose into tags like I-PER unambiguously, so no whitespace and no '-'.
using EntityType = std::string;

bool valid_entity_type(std::string_view name);

enum class TagKind { Outside, Inside, Begin };

// One named-entity tag: textually "O", "I-XXX" or "B-XXX".
struct NeTag {
  TagKind kind = TagKind::Outside;
  EntityType type;  // empty iff Outside

  static NeTag outside() { return {}; }
  static NeTag inside(EntityType t);
  static NeTag begin(EntityType t);

  /// Parses "O", "I-XXX" or "B-XXX"; throws std::invalid_argument otherwise.
  static NeTag parse(std::string_view text);
  static bool try_parse(std::string_view text, NeTag& out);

  bool is_outside() const { return kind == TagKind::Outside; }
  std::string str() const;

  friend bool operator==(const NeTag&, const NeTag&) = default;
};

}  // namespace nereval
