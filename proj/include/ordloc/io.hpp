#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ordloc/coverage.hpp"
#include "ordloc/gen.hpp"

namespace ordloc {

// A parsed or generated document. `text` is the canonical compact JSON, so
// serialize(parse(d)) reproduces d byte for byte.
//
// Shapes:
//   {"kind":"space","name":..,"points":[names],"order":[[i,j],..],"opens":[[point ids],..] | "discrete"}
//   {"kind":"locale","name":..,"frame":F,"rel":[[i,j],..]}
//   {"kind":"cones","name":..,"frame":F,"up":[ids],"down":[ids]}
//   {"kind":"coverage-table","name":..,"frame":F,"past":[[ids],..],"future":[[ids],..]}
// Locale, cones and table documents may carry "points":[names] after "name".
// with F = {"base":n,"opens":[[point ids],..] | "discrete"}. Element ids in
// rel, up, down and the tables are positions in F's opens list (the mask
// value for "discrete"); the serializer lists opens in ascending id order.
struct Document {
  std::string kind;
  std::string name;
  std::string text;
  std::shared_ptr<const OrderedSpace> space;
  std::shared_ptr<const OrderedLocale> locale;  // not set for space documents
  FramePtr frame;
  std::optional<CoverageTable> past, future;
  std::vector<std::string> points;  // point names; empty means numeric labels
  std::vector<std::string> notices;
};

// Throws ParseError (message "line L, column C: ..") or the constructor's
// error kind with a JSON path in the message.
Document parse_document(const std::string& text, bool strict = false);
std::string serialize(const Document& d);

Document document_from_space(const std::string& name, const OrderedSpace& s);
Document document_from_locale(const std::string& name, const OrderedLocale& ol,
                              const std::vector<std::string>& points = {});
Document document_from_tables(const std::string& name, const FramePtr& f, const CoverageTable& past,
                              const CoverageTable& future, const std::vector<std::string>& points = {});
Document document_from_instance(const Instance& inst);

// Labels elements by the point names of the document.
std::string element_label(const Document& d, Elem u);

// Hasse diagram of the frame; "cones" colours im(up) and im(down), "hulls"
// colours the convex elements. Throws FrameTooLarge above 128 elements.
std::string export_dot(const Document& d, const std::string& what, const OrderedLocale& ol);

}  // namespace ordloc
