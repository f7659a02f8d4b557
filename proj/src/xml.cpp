#include "promoscan/xml.h"

#include <cctype>
#include <cstdint>

#include "promoscan/error.h"

namespace promoscan::xml {

namespace {

// Length of the valid UTF-8 sequence starting at s[i], or 0.
std::size_t utf8_sequence(std::string_view s, std::size_t i) {
  auto c = static_cast<unsigned char>(s[i]);
  if (c < 0x80) return 1;
  std::size_t len = 0;
  std::uint32_t cp = 0;
  if ((c & 0xE0) == 0xC0) {
    len = 2;
    cp = c & 0x1F;
  } else if ((c & 0xF0) == 0xE0) {
    len = 3;
    cp = c & 0x0F;
  } else if ((c & 0xF8) == 0xF0) {
    len = 4;
    cp = c & 0x07;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    auto cc = static_cast<unsigned char>(s[i + k]);
    if ((cc & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (cc & 0x3F);
  }
  static constexpr std::uint32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  if (cp == 0xFFFE || cp == 0xFFFF) return 0;
  return len;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

constexpr std::string_view kReplacement = "\xEF\xBF\xBD";

class Parser {
 public:
  explicit Parser(std::string_view doc) : doc_(doc) {}

  Element run() {
    if (doc_.starts_with("\xEF\xBB\xBF")) pos_ = 3;
    if (doc_.substr(pos_).starts_with("<?xml")) {
      std::size_t end = doc_.find("?>", pos_);
      if (end == std::string_view::npos) fail("unterminated XML declaration");
      pos_ = end + 2;
    }
    skip_misc();
    if (pos_ >= doc_.size() || doc_[pos_] != '<') fail("missing root element");
    Element root = element();
    skip_misc();
    if (pos_ != doc_.size()) fail("content after the root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("malformed XML at byte " + std::to_string(pos_) + ": " + what);
  }

  bool at(std::string_view s) const { return doc_.substr(pos_).starts_with(s); }

  void skip_space() {
    while (pos_ < doc_.size() &&
           (doc_[pos_] == ' ' || doc_[pos_] == '\t' || doc_[pos_] == '\n' || doc_[pos_] == '\r')) {
      ++pos_;
    }
  }

  void skip_comment() {
    std::size_t end = doc_.find("-->", pos_ + 4);
    if (end == std::string_view::npos) fail("unterminated comment");
    pos_ = end + 3;
  }

  void skip_misc() {
    while (true) {
      skip_space();
      if (at("<!--")) {
        skip_comment();
      } else {
        return;
      }
    }
  }

  static bool name_char(char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '-' || c == '.' || c == ':' || u >= 0x80;
  }

  std::string name() {
    std::size_t start = pos_;
    if (pos_ >= doc_.size() || std::isdigit(static_cast<unsigned char>(doc_[pos_])) ||
        doc_[pos_] == '-' || doc_[pos_] == '.') {
      fail("expected a name");
    }
    while (pos_ < doc_.size() && name_char(doc_[pos_])) ++pos_;
    if (pos_ == start) fail("expected a name");
    return std::string(doc_.substr(start, pos_ - start));
  }

  void reference(std::string& out) {
    std::size_t semi = doc_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 12) fail("bad entity reference");
    std::string_view ent = doc_.substr(pos_ + 1, semi - pos_ - 1);
    if (ent == "lt") out += '<';
    else if (ent == "gt") out += '>';
    else if (ent == "amp") out += '&';
    else if (ent == "quot") out += '"';
    else if (ent == "apos") out += '\'';
    else if (ent.size() > 1 && ent[0] == '#') {
      std::uint32_t cp = 0;
      bool hex = ent[1] == 'x';
      std::string_view digits = ent.substr(hex ? 2 : 1);
      if (digits.empty()) fail("empty character reference");
      for (char c : digits) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (hex && c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else fail("bad character reference");
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
        if (cp > 0x10FFFF) fail("character reference out of range");
      }
      bool allowed = cp == 0x9 || cp == 0xA || cp == 0xD || (cp >= 0x20 && cp <= 0xD7FF) ||
                     (cp >= 0xE000 && cp <= 0xFFFD) || cp >= 0x10000;
      if (!allowed) fail("character reference to a forbidden character");
      append_utf8(out, cp);
    } else {
      fail("unknown entity '" + std::string(ent) + "'");
    }
    pos_ = semi + 1;
  }

  // Byte length of the character at pos_.
  std::size_t check_char() {
    auto u = static_cast<unsigned char>(doc_[pos_]);
    if (u < 0x20 && u != '\t' && u != '\n' && u != '\r') fail("forbidden control character");
    std::size_t len = utf8_sequence(doc_, pos_);
    if (len == 0) fail("invalid UTF-8");
    return len;
  }

  std::string attribute_value() {
    if (pos_ >= doc_.size() || (doc_[pos_] != '"' && doc_[pos_] != '\'')) fail("unquoted attribute");
    char quote = doc_[pos_++];
    std::string value;
    while (true) {
      if (pos_ >= doc_.size()) fail("unterminated attribute value");
      char c = doc_[pos_];
      if (c == quote) {
        ++pos_;
        return value;
      }
      if (c == '<') fail("'<' in attribute value");
      if (c == '&') {
        reference(value);
        continue;
      }
      std::size_t len = check_char();
      // Attribute-value normalisation turns literal whitespace into spaces.
      if (c == '\n' || c == '\t' || c == '\r') {
        value += ' ';
      } else {
        value.append(doc_.substr(pos_, len));
      }
      pos_ += len;
    }
  }

  Element element() {
    ++pos_;  // '<'
    Element el;
    el.name = name();
    while (true) {
      std::size_t before = pos_;
      skip_space();
      if (at("/>")) {
        pos_ += 2;
        return el;
      }
      if (at(">")) {
        ++pos_;
        break;
      }
      if (pos_ == before) fail("expected whitespace before attribute");
      std::string key = name();
      skip_space();
      if (!at("=")) fail("expected '=' after attribute name");
      ++pos_;
      skip_space();
      std::string value = attribute_value();
      if (el.attribute(key) != nullptr) fail("duplicate attribute '" + key + "'");
      el.attributes.emplace_back(std::move(key), std::move(value));
    }
    // Content.
    while (true) {
      if (pos_ >= doc_.size()) fail("unclosed element <" + el.name + ">");
      if (at("</")) {
        pos_ += 2;
        std::string closing = name();
        skip_space();
        if (!at(">")) fail("malformed end tag");
        ++pos_;
        if (closing != el.name) fail("mismatched end tag </" + closing + "> for <" + el.name + ">");
        return el;
      }
      if (at("<!--")) {
        skip_comment();
      } else if (at("<![CDATA[")) {
        std::size_t end = doc_.find("]]>", pos_);
        if (end == std::string_view::npos) fail("unterminated CDATA section");
        el.text.append(doc_.substr(pos_ + 9, end - pos_ - 9));
        pos_ = end + 3;
      } else if (at("<?") || at("<!")) {
        fail("unsupported markup");
      } else if (at("<")) {
        el.children.push_back(element());
      } else if (doc_[pos_] == '&') {
        reference(el.text);
      } else {
        if (at("]]>")) fail("']]>' in character data");
        std::size_t len = check_char();
        el.text.append(doc_.substr(pos_, len));
        pos_ += len;
      }
    }
  }

  std::string_view doc_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string sanitize_utf8(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    std::size_t len = utf8_sequence(text, i);
    if (len == 0) {
      out += kReplacement;
      ++i;
    } else {
      out.append(text.substr(i, len));
      i += len;
    }
  }
  return out;
}

std::string escape(std::string_view text) {
  std::string clean = sanitize_utf8(text);
  std::string out;
  out.reserve(clean.size());
  for (char c : clean) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&apos;";
        break;
      case '\t':
        out += "&#9;";
        break;
      case '\n':
        out += "&#10;";
        break;
      case '\r':
        out += "&#13;";
        break;
      default:
        if (static_cast<unsigned char>(c) >= 0x20) out += c;
    }
  }
  return out;
}

const std::string* Element::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return &v;
  }
  return nullptr;
}

const std::string& Element::required(std::string_view key) const {
  const std::string* v = attribute(key);
  if (v == nullptr) {
    throw InputError("<" + name + "> lacks attribute '" + std::string(key) + "'");
  }
  return *v;
}

Element parse(std::string_view document) { return Parser(document).run(); }

}  // namespace promoscan::xml
