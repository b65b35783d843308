#pragma once

// Expression parser, canonical serializer, and the workspace file format.

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "mfc/morphisms.hpp"
#include "mfc/superalg.hpp"

namespace mfc {

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }
  /// The message without the position prefix.
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

/// Canonical text: terms by ascending total degree, then descending exponent
/// vectors in chart order; reduced fractions; `0` for the zero series.
std::string serialize(const SuperSeries& s);

/// Parse `text` as a series on `chart`. Products keep the written order of factors.
SuperSeries parse_expression(std::string_view text, const ChartPtr& chart, int order);

struct Settings {
  int order = 3;
  int eps_order = 2;
  bool strict = true;
};

struct NamedFunction {
  std::string chart;
  SuperSeries value;
};

struct Workspace {
  Settings settings;
  std::map<std::string, ChartPtr> charts;
  std::map<std::string, ThickMorphism> morphisms;
  std::map<std::string, NamedFunction> functions;

  const ThickMorphism& morphism(const std::string& name) const;
  const NamedFunction& function(const std::string& name) const;
};

/// `strict` overrides the workspace setting (e.g. from MFC_STRICT).
Workspace parse_workspace(std::string_view text, std::optional<bool> strict = std::nullopt);

}  // namespace mfc
