#include "mmc/xml_io.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace pt = boost::property_tree;

namespace mmc {

namespace {

constexpr std::string_view kAttrNode = "<xmlattr>";
constexpr std::string_view kCommentNode = "<xmlcomment>";
constexpr std::string_view kTextNode = "<xmltext>";

bool is_blank(const std::string &s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; });
}

Element read_element(const std::string &tag, const pt::ptree &node) {
  auto type = metatype_from_tag(tag);
  if (!type)
    throw Error(Errc::UnknownMetatype, "<" + tag + ">");
  if (!is_blank(node.data()))
    throw Error(Errc::MalformedDocument, "<" + tag + "> carries text content");

  Element e;
  e.type = *type;
  bool has_name = false;
  for (const auto &child : node) {
    if (child.first == kCommentNode)
      continue;
    if (child.first == kTextNode) {
      if (!is_blank(child.second.data()))
        throw Error(Errc::MalformedDocument, "<" + tag + "> carries text content");
      continue;
    }
    if (child.first == kAttrNode) {
      for (const auto &[key, value] : child.second) {
        const std::string &v = value.data();
        if (key == "name") {
          e.name = v;
          has_name = true;
        } else if (key == "id") {
          e.id = v;
        } else if (key == "source" || key == "target") {
          const EdgeRole role = key == "source" ? EdgeRole::Source : EdgeRole::Target;
          if (!has_edge_role(e.type, role))
            throw Error(Errc::MalformedDocument,
                        "<" + tag + "> does not take a '" + key + "' attribute");
          e.edges.push_back({role, v});
        } else {
          e.attributes[key] = v;
        }
      }
      continue;
    }
    e.children.push_back(read_element(child.first, child.second));
  }
  if (is_named(e.type) && (!has_name || e.name.empty()))
    throw Error(Errc::MissingName, "<" + tag + "> without a name");
  if (!is_named(e.type) && has_name)
    throw Error(Errc::MalformedDocument, "<" + tag + "> cannot carry a name");
  // Edge order is fixed (source before target) regardless of attribute order.
  std::sort(e.edges.begin(), e.edges.end(),
            [](const Edge &a, const Edge &b) { return a.role < b.role; });
  return e;
}

void escape_into(std::string &out, std::string_view s) {
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    case '\'': out += "&apos;"; break;
    case '\n': out += "&#10;"; break;
    case '\r': out += "&#13;"; break;
    case '\t': out += "&#9;"; break;
    default: out += c;
    }
  }
}

void write_attr(std::string &out, std::string_view key, std::string_view value) {
  out += ' ';
  out += key;
  out += "=\"";
  escape_into(out, value);
  out += '"';
}

void write_element(std::string &out, const Element &e, int depth) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += '<';
  out += xml_tag(e.type);
  if (!e.id.empty())
    write_attr(out, "id", e.id);
  if (is_named(e.type))
    write_attr(out, "name", e.name);
  for (const auto &[k, v] : e.attributes)
    write_attr(out, k, v);
  for (EdgeRole role : {EdgeRole::Source, EdgeRole::Target})
    if (const Edge *edge = e.edge(role))
      write_attr(out, to_string(role), edge->target);
  if (e.children.empty()) {
    out += "/>\n";
    return;
  }
  out += ">\n";
  for (const Element &c : e.children)
    write_element(out, c, depth + 1);
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += "</";
  out += xml_tag(e.type);
  out += ">\n";
}

} // namespace

Model parse_model(std::string_view text) {
  if (is_blank(std::string(text)))
    throw Error(Errc::MalformedDocument, "empty document");
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_xml(in, tree, pt::xml_parser::no_concat_text);
  } catch (const pt::xml_parser_error &e) {
    throw Error(Errc::MalformedDocument, e.message() + " at line " + std::to_string(e.line()));
  }

  const pt::ptree::value_type *root = nullptr;
  for (const auto &child : tree) {
    if (child.first == kCommentNode)
      continue;
    if (child.first == kTextNode) {
      if (!is_blank(child.second.data()))
        throw Error(Errc::MalformedDocument, "text outside the root element");
      continue;
    }
    if (root)
      throw Error(Errc::MalformedDocument, "more than one root element");
    root = &child;
  }
  if (!root)
    throw Error(Errc::MalformedDocument, "no root element");

  Model model{read_element(root->first, root->second)};
  validate(model);
  return model;
}

std::string serialize_model(const Model &model) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  write_element(out, model.root, 0);
  return out;
}

Model load_model_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(Errc::IoFailure, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

} // namespace mmc
