#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "phiflat/error.hpp"
#include "phiflat/module.hpp"
#include "phiflat/phiring.hpp"
#include "phiflat/valuation.hpp"

namespace phiflat {

struct RingBinding {
  std::string name;
  Ring ring;
};
struct SupportsBinding {
  std::string name;
  std::string ring;
  PhiRing supports;
};
struct IdealBinding {
  std::string name;
  std::string ring;
  Ideal ideal;
};
struct ModuleBinding {
  std::string name;
  std::string ring;
  PresentedModule module;
};
struct ValuationBinding {
  std::string name;
  std::string ring;
  ValuationData valuation;
};

using Binding =
    std::variant<RingBinding, SupportsBinding, IdealBinding, ModuleBinding, ValuationBinding>;

const std::string& binding_name(const Binding& b);

/// Named bindings in source order.  Ideals and modules belong to the ring
/// named by `on`, or to the most recent ring statement.
struct Session {
  std::vector<Binding> bindings;

  static Error unresolved(const char* kind, std::string_view name);

  /// The binding of kind T named `name`, or the last one of that kind when
  /// `name` is empty.  Throws UnresolvedName.
  template <class T>
  const T& get(std::string_view name, const char* kind) const {
    const T* found = nullptr;
    for (const auto& b : bindings)
      if (const T* t = std::get_if<T>(&b); t && (name.empty() || t->name == name)) found = t;
    if (!found) throw unresolved(kind, name);
    return *found;
  }

  const Ring& ring(std::string_view name) const { return get<RingBinding>(name, "ring").ring; }
  bool operator==(const Session& o) const;
};

struct ParseOptions {
  MonomialOrder order = MonomialOrder::grevlex();
  bool degenerate_ok = false;
};

/// Statements:
///   ring A = QQ[u,v] / (u*v);
///   supports S on A = (u,v), (w);
///   ideal I [on A] = (u, v);
///   module M [on A] = coker [[v], [-u]];      rows are generators
///   valuation V on A = [[1, 2], [0, inf]];
/// `#` and `//` start comments.  Errors carry byte offset, line and column.
Session parse_session(std::string_view text, const ParseOptions& opts = {});

/// Source text that parses back to an equal session.
std::string print_session(const Session& s);

}  // namespace phiflat
