#include "phiflat/session.hpp"

#include <algorithm>

#include "phiflat/parse_util.hpp"

namespace phiflat {

const std::string& binding_name(const Binding& b) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, b);
}

Error Session::unresolved(const char* kind, std::string_view name) {
  if (name.empty()) return Error(ErrorCode::UnresolvedName, std::string("no ") + kind + " is bound");
  return Error(ErrorCode::UnresolvedName, std::string("no ") + kind + " named " + std::string(name));
}

namespace {

bool same_polys(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

bool same_binding(const Binding& x, const Binding& y) {
  if (x.index() != y.index() || binding_name(x) != binding_name(y)) return false;
  if (auto a = std::get_if<RingBinding>(&x)) {
    auto b = std::get<RingBinding>(y);
    return *a->ring.poly() == *b.ring.poly() && same_polys(a->ring.relations(), b.ring.relations());
  }
  if (auto a = std::get_if<SupportsBinding>(&x)) {
    auto b = std::get<SupportsBinding>(y);
    const auto& fa = a->supports.phi0();
    const auto& fb = b.supports.phi0();
    if (a->ring != b.ring || fa.size() != fb.size()) return false;
    for (std::size_t i = 0; i < fa.size(); ++i)
      if (!same_polys(fa[i].gens(), fb[i].gens())) return false;
    return true;
  }
  if (auto a = std::get_if<IdealBinding>(&x)) {
    auto b = std::get<IdealBinding>(y);
    return a->ring == b.ring && same_polys(a->ideal.gens(), b.ideal.gens());
  }
  if (auto a = std::get_if<ModuleBinding>(&x)) {
    auto b = std::get<ModuleBinding>(y);
    if (a->ring != b.ring || a->module.gens != b.module.gens ||
        a->module.relations.size() != b.module.relations.size())
      return false;
    for (std::size_t i = 0; i < a->module.relations.size(); ++i)
      if (!same_polys(a->module.relations[i], b.module.relations[i])) return false;
    return true;
  }
  auto a = std::get<ValuationBinding>(x);
  auto b = std::get<ValuationBinding>(y);
  return a.ring == b.ring && a.valuation == b.valuation;
}

class SessionParser {
public:
  SessionParser(std::string_view text, const ParseOptions& opts) : cur_(text), opts_(opts) {}

  Session run() {
    for (;;) {
      cur_.skip_ws();
      if (cur_.at_end()) return std::move(s_);
      statement();
    }
  }

private:
  Cursor cur_;
  ParseOptions opts_;
  Session s_;
  std::string current_ring_;

  std::string ident(const char* what) {
    cur_.skip_ws();
    std::size_t at = cur_.pos();
    std::string id = cur_.take_ident();
    if (id.empty()) throw cur_.error_at(at, std::string("expected ") + what);
    return id;
  }

  void keyword(const char* kw) {
    std::size_t at = cur_.pos();
    if (ident(kw) != kw) throw cur_.error_at(at, std::string("expected '") + kw + "'");
  }

  /// Consumes "on NAME" if present.
  std::optional<std::string> on_clause() {
    cur_.skip_ws();
    std::size_t save = cur_.pos();
    if (cur_.take_ident() == "on") return ident("ring name");
    cur_.set_pos(save);
    return std::nullopt;
  }

  const Ring& resolve_ring(const std::string& name, std::size_t at) {
    for (auto it = s_.bindings.rbegin(); it != s_.bindings.rend(); ++it)
      if (auto r = std::get_if<RingBinding>(&*it); r && r->name == name) return r->ring;
    throw Error(ErrorCode::UnresolvedName, cur_.error_at(at, "unknown ring " + name).what());
  }

  std::string ring_for(std::optional<std::string> on, std::size_t at) {
    if (on) return *on;
    if (current_ring_.empty()) throw Error(ErrorCode::UnresolvedName, cur_.error_at(at, "no ring declared yet").what());
    return current_ring_;
  }

  void bind(Binding b, std::size_t at) {
    for (const auto& o : s_.bindings)
      if (binding_name(o) == binding_name(b))
        throw cur_.error_at(at, "name " + binding_name(b) + " is already bound");
    s_.bindings.push_back(std::move(b));
  }

  Poly poly(const Ring& R) {
    cur_.skip_ws();
    return parse_poly_at(R.poly(), cur_);
  }

  /// "(" polys ")", possibly empty.
  std::vector<Poly> poly_list(const Ring& R) {
    cur_.expect('(');
    std::vector<Poly> out;
    if (cur_.accept(')')) return out;
    do {
      out.push_back(poly(R));
    } while (cur_.accept(','));
    cur_.expect(')');
    return out;
  }

  void statement() {
    std::size_t at = cur_.pos();
    std::string kw = ident("a statement");
    if (kw == "ring") {
      ring_stmt(at);
    } else if (kw == "supports") {
      supports_stmt(at);
    } else if (kw == "ideal") {
      ideal_stmt(at);
    } else if (kw == "module") {
      module_stmt(at);
    } else if (kw == "valuation") {
      valuation_stmt(at);
    } else {
      throw cur_.error_at(at, "unknown statement '" + kw + "'");
    }
    cur_.expect(';');
  }

  void ring_stmt(std::size_t at) {
    std::string name = ident("ring name");
    cur_.expect('=');
    keyword("QQ");
    cur_.expect('[');
    std::vector<std::string> vars;
    if (!cur_.accept(']')) {
      do {
        std::size_t vat = cur_.pos();
        std::string v = ident("variable name");
        if (std::find(vars.begin(), vars.end(), v) != vars.end())
          throw cur_.error_at(vat, "repeated variable " + v);
        vars.push_back(v);
      } while (cur_.accept(','));
      cur_.expect(']');
    }
    RingPtr P = make_poly_ring(vars, opts_.order);
    Ring R = Ring::polynomial(P);
    if (cur_.accept('/')) R = Ring(P, poly_list(R));
    bind(RingBinding{name, R}, at);
    current_ring_ = name;
  }

  void supports_stmt(std::size_t at) {
    std::string name = ident("supports name");
    std::size_t rat = cur_.pos();
    auto on = on_clause();
    if (!on) throw cur_.error_at(rat, "expected 'on RING'");
    const Ring& R = resolve_ring(*on, rat);
    cur_.expect('=');
    std::vector<Ideal> fam;
    do {
      fam.emplace_back(R, poly_list(R));
    } while (cur_.accept(','));
    bind(SupportsBinding{name, *on, make_phi_ring(R, std::move(fam), opts_.degenerate_ok)}, at);
  }

  void ideal_stmt(std::size_t at) {
    std::string name = ident("ideal name");
    std::size_t rat = cur_.pos();
    std::string ring = ring_for(on_clause(), rat);
    const Ring& R = resolve_ring(ring, rat);
    cur_.expect('=');
    bind(IdealBinding{name, ring, Ideal(R, poly_list(R))}, at);
  }

  void module_stmt(std::size_t at) {
    std::string name = ident("module name");
    std::size_t rat = cur_.pos();
    std::string ring = ring_for(on_clause(), rat);
    const Ring& R = resolve_ring(ring, rat);
    cur_.expect('=');
    keyword("coker");
    cur_.expect('[');
    std::vector<std::vector<Poly>> rows;
    std::size_t width = 0;
    if (!cur_.accept(']')) {
      do {
        cur_.skip_ws();
        std::size_t row_at = cur_.pos();
        cur_.expect('[');
        std::vector<Poly> row;
        if (!cur_.accept(']')) {
          do {
            row.push_back(poly(R));
          } while (cur_.accept(','));
          cur_.expect(']');
        }
        if (!rows.empty() && row.size() != width) throw cur_.error_at(row_at, "ragged matrix row");
        width = row.size();
        rows.push_back(std::move(row));
      } while (cur_.accept(','));
      cur_.expect(']');
    }
    PresentedModule M{R, rows.size(), std::vector<Vec>(width)};
    for (const auto& row : rows)
      for (std::size_t j = 0; j < width; ++j) M.relations[j].push_back(row[j]);
    bind(ModuleBinding{name, ring, std::move(M)}, at);
  }

  void valuation_stmt(std::size_t at) {
    std::string name = ident("valuation name");
    std::size_t rat = cur_.pos();
    auto on = on_clause();
    if (!on) throw cur_.error_at(rat, "expected 'on RING'");
    const Ring& R = resolve_ring(*on, rat);
    cur_.expect('=');
    cur_.expect('[');
    std::vector<std::vector<int64_t>> w;
    std::vector<std::vector<bool>> inf;
    do {
      cur_.skip_ws();
      std::size_t row_at = cur_.pos();
      cur_.expect('[');
      std::vector<int64_t> row;
      std::vector<bool> row_inf;
      do {
        cur_.skip_ws();
        std::size_t eat = cur_.pos();
        bool neg = cur_.accept('-');
        cur_.skip_ws();
        if (!neg && is_ident_start(cur_.peek())) {
          if (cur_.take_ident() != "inf") throw cur_.error_at(eat, "expected an integer or inf");
          row.push_back(0);
          row_inf.push_back(true);
          continue;
        }
        std::string digits = cur_.take_digits();
        if (digits.empty()) throw cur_.error_at(eat, "expected an integer or inf");
        row.push_back((neg ? -1 : 1) * std::stoll(digits));
        row_inf.push_back(false);
      } while (cur_.accept(','));
      cur_.expect(']');
      if (row.size() != R.nvars())
        throw cur_.error_at(row_at, "valuation row needs one entry per variable");
      w.push_back(std::move(row));
      inf.push_back(std::move(row_inf));
    } while (cur_.accept(','));
    cur_.expect(']');
    std::vector<bool> flags = inf[0];
    for (const auto& r : inf)
      if (r != flags) throw cur_.error_at(rat, "an inf column must be inf in every row");
    bind(ValuationBinding{name, *on, ValuationData(std::move(w), std::move(flags))}, at);
  }
};

std::string join_polys(const std::vector<Poly>& ps) {
  std::string s;
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? ", " : "") + ps[i].str();
  return s;
}

}  // namespace

bool Session::operator==(const Session& o) const {
  if (bindings.size() != o.bindings.size()) return false;
  for (std::size_t i = 0; i < bindings.size(); ++i)
    if (!same_binding(bindings[i], o.bindings[i])) return false;
  return true;
}

Session parse_session(std::string_view text, const ParseOptions& opts) {
  return SessionParser(text, opts).run();
}

std::string print_session(const Session& s) {
  std::string out, current;
  auto on = [&](const std::string& ring) { return ring == current ? "" : " on " + ring; };
  for (const auto& b : s.bindings) {
    if (auto r = std::get_if<RingBinding>(&b)) {
      out += "ring " + r->name + " = " + r->ring.poly()->str();
      if (r->ring.is_quotient()) out += " / (" + join_polys(r->ring.relations()) + ")";
      current = r->name;
    } else if (auto p = std::get_if<SupportsBinding>(&b)) {
      out += "supports " + p->name + " on " + p->ring + " = ";
      const auto& fam = p->supports.phi0();
      for (std::size_t i = 0; i < fam.size(); ++i) out += (i ? ", (" : "(") + join_polys(fam[i].gens()) + ")";
    } else if (auto i = std::get_if<IdealBinding>(&b)) {
      out += "ideal " + i->name + on(i->ring) + " = (" + join_polys(i->ideal.gens()) + ")";
    } else if (auto m = std::get_if<ModuleBinding>(&b)) {
      out += "module " + m->name + on(m->ring) + " = coker [";
      for (std::size_t row = 0; row < m->module.gens; ++row) {
        out += row ? ", [" : "[";
        for (std::size_t j = 0; j < m->module.relations.size(); ++j)
          out += (j ? ", " : "") + m->module.relations[j][row].str();
        out += "]";
      }
      out += "]";
    } else {
      const auto& v = std::get<ValuationBinding>(b);
      out += "valuation " + v.name + " on " + v.ring + " = " + v.valuation.str();
    }
    out += ";\n";
  }
  return out;
}

}  // namespace phiflat
