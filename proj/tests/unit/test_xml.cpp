#include <gtest/gtest.h>

#include "promoscan/error.h"
#include "promoscan/xml.h"

namespace promoscan::xml {
namespace {

TEST(XmlEscape, MarkupCharacters) {
  EXPECT_EQ(escape(R"(<a href="x">&'</a>)"), "&lt;a href=&quot;x&quot;&gt;&amp;&apos;&lt;/a&gt;");
}

TEST(XmlEscape, ControlCharactersAndWhitespace) {
  EXPECT_EQ(escape(std::string("a\x01" "b\tc\nd\re", 9)), "ab&#9;c&#10;d&#13;e");
}

TEST(XmlEscape, InvalidUtf8IsReplaced) {
  EXPECT_EQ(sanitize_utf8("ok\xff!"), "ok\xEF\xBF\xBD!");
  EXPECT_EQ(sanitize_utf8("\xC3\xA9"), "\xC3\xA9");
  EXPECT_EQ(sanitize_utf8("\xC3"), "\xEF\xBF\xBD");
  EXPECT_EQ(sanitize_utf8("\xED\xA0\x80"), "\xEF\xBF\xBD\xEF\xBF\xBD\xEF\xBF\xBD");
}

TEST(XmlParse, RoundTripsEscapedContent) {
  std::string raw = "if (a < b && c > \"d\") {\t'x'";
  std::string doc = "<?xml version=\"1.0\"?>\n<r k=\"" + escape(raw) + "\">" + escape(raw) + "</r>";
  Element e = parse(doc);
  EXPECT_EQ(e.name, "r");
  EXPECT_EQ(e.required("k"), raw);
  EXPECT_EQ(e.text, raw);
}

TEST(XmlParse, KeepsMultiByteCharacters) {
  std::string raw = "caf\xC3\xA9 \xE2\x82\xAC \xF0\x9F\x98\x80 \xEF\xBF\xBD";
  Element e = parse("<r k=\"" + escape(raw) + "\">" + escape(raw) + "</r>");
  EXPECT_EQ(e.required("k"), raw);
  EXPECT_EQ(e.text, raw);
  EXPECT_THROW(parse("<r>\xC3</r>"), InputError);
  EXPECT_THROW(parse("<r k=\"\xE2\x82\"/>"), InputError);
}

TEST(XmlParse, NestedElementsAndComments) {
  Element e = parse("<!-- c --><a x='1'><b/><c y=\"2\">t&#65;&#x42;</c></a>\n");
  ASSERT_EQ(e.children.size(), 2u);
  EXPECT_EQ(e.children[0].name, "b");
  EXPECT_EQ(e.children[1].text, "tAB");
  EXPECT_EQ(*e.attribute("x"), "1");
  EXPECT_EQ(e.attribute("zz"), nullptr);
  EXPECT_THROW(e.required("zz"), InputError);
}

TEST(XmlParse, RejectsMalformedDocuments) {
  for (const char* bad : {"", "<a>", "<a></b>", "<a x=1/>", "<a x='1' x='2'/>", "<a/><b/>", "<a>&bogus;</a>",
                          "<a>x < y</a>", "text<a/>", "<a>\x01</a>", "<a b=\"<\"/>"}) {
    EXPECT_THROW(parse(bad), InputError) << bad;
  }
}

}  // namespace
}  // namespace promoscan::xml
