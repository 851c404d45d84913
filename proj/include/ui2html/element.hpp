#pragma once

#include <string>
#include <vector>

#include "ui2html/errors.hpp"
#include "ui2html/geometry.hpp"

namespace ui2html {

enum class ElementKind { Text, NonText, Unknown };

std::string to_string(ElementKind kind);
ElementKind element_kind_from_string(const std::string& s);

struct Element {
    int id = 0;
    ElementKind kind = ElementKind::Unknown;
    BBox bbox;
};

class SchemaError : public Error {
public:
    SchemaError(const std::string& msg, int record_index = -1)
        : Error("SchemaError: " + msg +
                (record_index >= 0 ? " (record " + std::to_string(record_index) + ")"
                                   : "")) {}
};

class InvalidBBox : public Error {
public:
    InvalidBBox(const std::string& msg, int record_index = -1)
        : Error("InvalidBBox: " + msg +
                (record_index >= 0 ? " (record " + std::to_string(record_index) + ")"
                                   : "")) {}
};

// Element JSON schema, shared by every stage:
//   [{"id": int, "kind": "text"|"nontext"|"unknown",
//     "bbox": [col_min, row_min, col_max, row_max]}, ...]
std::vector<Element> load_elements(const std::string& path);
std::vector<Element> elements_from_json_text(const std::string& text);
std::string elements_to_json_text(const std::vector<Element>& elements);
void save_elements(const std::vector<Element>& elements, const std::string& path);

}  // namespace ui2html
