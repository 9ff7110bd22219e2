#include "nereval/types.hpp"

#include <cctype>
#include <stdexcept>

namespace nereval {

Scheme scheme_from_string(std::string_view name) {
  std::string lowered(name);
  for (char& c : lowered) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lowered == "iob1") return Scheme::IOB1;
  if (lowered == "iob2") return Scheme::IOB2;
  throw std::invalid_argument("unknown tagging scheme '" + std::string(name) +
                              "' (expected IOB1 or IOB2)");
}

std::string_view to_string(Scheme scheme) {
  return scheme == Scheme::IOB1 ? "IOB1" : "IOB2";
}

bool valid_entity_type(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (c == '-' || std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

NeTag NeTag::inside(EntityType t) {
  if (!valid_entity_type(t)) throw std::invalid_argument("invalid entity type '" + t + "'");
  return {TagKind::Inside, std::move(t)};
}

NeTag NeTag::begin(EntityType t) {
  if (!valid_entity_type(t)) throw std::invalid_argument("invalid entity type '" + t + "'");
  return {TagKind::Begin, std::move(t)};
}

bool NeTag::try_parse(std::string_view text, NeTag& out) {
  if (text == "O") {
    out = NeTag::outside();
    return true;
  }
  if (text.size() < 3 || text[1] != '-' || (text[0] != 'I' && text[0] != 'B')) return false;
  std::string_view type = text.substr(2);
  if (!valid_entity_type(type)) return false;
  out.kind = text[0] == 'I' ? TagKind::Inside : TagKind::Begin;
  out.type = std::string(type);
  return true;
}

NeTag NeTag::parse(std::string_view text) {
  NeTag tag;
  if (!try_parse(text, tag)) {
    throw std::invalid_argument("malformed tag '" + std::string(text) + "'");
  }
  return tag;
}

std::string NeTag::str() const {
  switch (kind) {
    case TagKind::Outside: return "O";
    case TagKind::Inside: return "I-" + type;
    case TagKind::Begin: return "B-" + type;
  }
  return "O";
}

}  // namespace nereval
