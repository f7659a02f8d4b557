#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace promoscan::xml {

/// Escapes text for use in element content or a double-quoted attribute.
/// Invalid UTF-8 becomes U+FFFD; control characters XML 1.0 forbids are
/// dropped; tab, CR and LF are written as character references.
std::string escape(std::string_view text);

/// Replaces invalid UTF-8 sequences with U+FFFD.
std::string sanitize_utf8(std::string_view text);

struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::string text;  // concatenated character data of this element
  std::vector<Element> children;

  /// Attribute value, or nullptr.
  const std::string* attribute(std::string_view key) const;
  /// Attribute value; throws InputError naming the element when absent.
  const std::string& required(std::string_view key) const;
};

/// Strict non-validating parser for the report documents: one root element,
/// balanced tags, quoted unique attributes, predefined and numeric entities,
/// comments and an optional XML declaration. Throws InputError on anything
/// else.
Element parse(std::string_view document);

}  // namespace promoscan::xml
