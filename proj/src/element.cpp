#include "ui2html/element.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ui2html {

using nlohmann::json;

std::string to_string(ElementKind kind) {
    switch (kind) {
        case ElementKind::Text: return "text";
        case ElementKind::NonText: return "nontext";
        case ElementKind::Unknown: return "unknown";
    }
    return "unknown";
}

ElementKind element_kind_from_string(const std::string& s) {
    if (s == "text") return ElementKind::Text;
    if (s == "nontext") return ElementKind::NonText;
    if (s == "unknown") return ElementKind::Unknown;
    throw SchemaError("unknown element kind '" + s + "'");
}

std::vector<Element> elements_from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw SchemaError("expected a top-level array");

    std::vector<Element> out;
    std::set<int> ids;
    for (int i = 0; i < static_cast<int>(doc.size()); ++i) {
        const json& rec = doc[static_cast<std::size_t>(i)];
        if (!rec.is_object()) throw SchemaError("expected an object", i);
        if (!rec.contains("id") || !rec["id"].is_number_integer())
            throw SchemaError("missing or non-integer 'id'", i);
        if (!rec.contains("kind") || !rec["kind"].is_string())
            throw SchemaError("missing or non-string 'kind'", i);
        if (!rec.contains("bbox") || !rec["bbox"].is_array() ||
            rec["bbox"].size() != 4)
            throw SchemaError("missing 'bbox' or not a 4-element array", i);
        for (const json& v : rec["bbox"]) {
            if (!v.is_number_integer())
                throw SchemaError("non-integer bbox coordinate", i);
        }

        Element e;
        e.id = rec["id"].get<int>();
        try {
            e.kind = element_kind_from_string(rec["kind"].get<std::string>());
        } catch (const SchemaError&) {
            throw SchemaError("unknown element kind '" +
                                  rec["kind"].get<std::string>() + "'",
                              i);
        }
        e.bbox = BBox{rec["bbox"][0].get<int>(), rec["bbox"][1].get<int>(),
                      rec["bbox"][2].get<int>(), rec["bbox"][3].get<int>()};
        if (e.bbox.col_min >= e.bbox.col_max || e.bbox.row_min >= e.bbox.row_max)
            throw InvalidBBox("bbox min must be strictly below max", i);
        if (e.bbox.col_min < 0 || e.bbox.row_min < 0)
            throw InvalidBBox("bbox coordinates must be non-negative", i);
        if (!ids.insert(e.id).second)
            throw SchemaError("duplicate element id " + std::to_string(e.id), i);
        out.push_back(e);
    }
    return out;
}

std::vector<Element> load_elements(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("FileRead: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return elements_from_json_text(buf.str());
}

std::string elements_to_json_text(const std::vector<Element>& elements) {
    json doc = json::array();
    for (const Element& e : elements) {
        doc.push_back({{"id", e.id},
                       {"kind", to_string(e.kind)},
                       {"bbox", {e.bbox.col_min, e.bbox.row_min, e.bbox.col_max,
                                 e.bbox.row_max}}});
    }
    return doc.dump(2) + "\n";
}

void save_elements(const std::vector<Element>& elements, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("FileWrite: cannot open '" + path + "'");
    out << elements_to_json_text(elements);
}

}  // namespace ui2html
