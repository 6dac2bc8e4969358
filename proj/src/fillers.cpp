#include "xfrag/fillers.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "xfrag/error.hpp"

namespace xfrag {

namespace {

constexpr std::string_view kHoleIdAttr = "id";

bool contains_tag(const ElementNode& n, std::string_view tag) {
  if (n.tag == tag) return true;
  return std::any_of(n.children.begin(), n.children.end(),
                     [&](const ElementNode& c) { return contains_tag(c, tag); });
}

struct Encoder {
  std::string_view attr;
  std::string_view hole_tag;
  std::set<std::string> cuts;
  std::vector<Filler> fillers;
  std::size_t used = 0;

  void process(ElementNode& node) {
    for (auto& child : node.children) {
      auto label = try_label_of(child, attr);
      if (label && cuts.count(format_address(*label))) {
        ++used;
        std::string id = "F" + std::to_string(fillers.size());
        fillers.push_back(Filler{id, XmlTree{}});
        std::size_t slot = fillers.size() - 1;
        ElementNode cut = std::move(child);
        process(cut);
        fillers[slot].content.root = std::move(cut);
        child = ElementNode(std::string(hole_tag));
        child.set_attribute(kHoleIdAttr, id);
        continue;
      }
      process(child);
    }
  }
};

}  // namespace

std::vector<Filler> encode_fillers(const AnnotatedTree& t, std::span<const Address> cuts,
                                   std::string_view hole_tag) {
  if (hole_tag.empty()) throw Error(ErrorKind::kInvalidArgument, "hole tag is empty");
  if (contains_tag(t.tree.root, hole_tag)) {
    throw Error(ErrorKind::kInvalidArgument,
                "document already uses the hole tag <" + std::string(hole_tag) + ">");
  }
  Encoder enc{t.attr_name, hole_tag, {}, {}, 0};
  for (const auto& c : cuts) {
    if (c.is_root()) throw Error(ErrorKind::kInvalidCut, "the document root cannot be cut");
    if (!enc.cuts.insert(format_address(c)).second) {
      throw Error(ErrorKind::kDuplicateCut, "cut " + format_address(c) + " listed twice");
    }
  }
  enc.fillers.push_back(Filler{"F0", XmlTree{t.tree.root, t.tree.doc_id}});
  enc.process(enc.fillers[0].content.root);
  if (enc.used != enc.cuts.size()) {
    for (const auto& c : cuts) {
      bool found = std::any_of(enc.fillers.begin() + 1, enc.fillers.end(), [&](const Filler& f) {
        auto l = try_label_of(f.content.root, t.attr_name);
        return l && *l == c;
      });
      if (!found) {
        throw Error(ErrorKind::kInvalidCut, "cut " + format_address(c) + " is not in the document");
      }
    }
  }
  for (std::size_t i = 1; i < enc.fillers.size(); ++i) {
    enc.fillers[i].content.doc_id = t.tree.doc_id;
  }
  return enc.fillers;
}

namespace {

struct Decoder {
  std::string_view hole_tag;
  std::map<std::string, const Filler*, std::less<>> by_id;
  std::set<std::string, std::less<>> active;
  std::set<std::string, std::less<>> used;

  const std::string& hole_id(const ElementNode& hole) const {
    if (hole.attributes.size() != 1 || hole.attributes[0].name != kHoleIdAttr) {
      throw Error(ErrorKind::kInvalidArgument,
                  "hole element must carry exactly one attribute, \"id\"");
    }
    return hole.attributes[0].value;
  }

  ElementNode expand(const std::string& id) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw Error(ErrorKind::kIncompleteStream, "filler " + id + " is missing");
    }
    if (active.count(id)) throw Error(ErrorKind::kCycle, "hole cycle through filler " + id);
    if (!used.insert(id).second) {
      throw Error(ErrorKind::kInvalidArgument, "filler " + id + " is referenced twice");
    }
    active.insert(id);
    ElementNode root = it->second->content.root;
    if (root.tag == hole_tag) root = expand(hole_id(root));
    fill(root);
    active.erase(id);
    return root;
  }

  void fill(ElementNode& n) {
    for (auto& c : n.children) {
      if (c.tag == hole_tag) {
        c = expand(hole_id(c));
      } else {
        fill(c);
      }
    }
  }
};

}  // namespace

DecodeResult decode_fillers(std::span<const Filler> fillers, std::string_view hole_tag) {
  Decoder dec{hole_tag, {}, {}, {}};
  for (const auto& f : fillers) {
    if (!dec.by_id.emplace(f.id, &f).second) {
      throw Error(ErrorKind::kInvalidArgument, "filler id " + f.id + " appears twice");
    }
  }
  DecodeResult out;
  out.tree.root = dec.expand("F0");
  out.tree.doc_id = dec.by_id.at("F0")->content.doc_id;
  for (const auto& [id, f] : dec.by_id) {
    if (!dec.used.count(id)) out.orphans.push_back(id);
  }
  return out;
}

}  // namespace xfrag
