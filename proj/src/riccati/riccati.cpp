#include "fqdyn/riccati.hpp"

#include "fqdyn/errors.hpp"

namespace fqdyn {

namespace {

enum Col { kA = 0, kB, kC, kE, kF, kG };
enum class Pair { AA, AB, BB };

// coef * (a or b)_{d-i} * (a or b)_{d-j}
struct Term {
  int coef;
  Pair kind;
  int i, j;
};

using Entry = std::vector<Term>;
// One listed equation: entries for columns a, b, c, e, f, g.
using Equation = std::array<Entry, kUnknowns>;

// The seven listed equations E_0 .. E_6, transcribed term by term.
const std::array<Equation, 7>& listed_equations() {
  static const std::array<Equation, 7> table = {{
      // E_0
      {{{{-1, Pair::AA, 0, 0}},
        {{-1, Pair::AB, 0, 0}},
        {{-1, Pair::BB, 0, 0}},
        {{1, Pair::AB, 0, 1}, {-1, Pair::AB, 1, 0}},
        {},
        {}}},
      // E_1
      {{{{-2, Pair::AA, 0, 1}},
        {{-1, Pair::AB, 0, 1}, {-1, Pair::AB, 1, 0}},
        {{-2, Pair::BB, 0, 1}},
        {{2, Pair::AB, 0, 2}, {-2, Pair::AB, 2, 0}},
        {{1, Pair::AB, 0, 1}, {-1, Pair::AB, 1, 0}},
        {}}},
      // E_2
      {{{{-2, Pair::AA, 0, 2}, {-1, Pair::AA, 1, 1}},
        {{-1, Pair::AB, 0, 2}, {-1, Pair::AB, 1, 1}, {-1, Pair::AB, 2, 0}},
        {{-2, Pair::BB, 0, 2}, {-1, Pair::BB, 1, 1}},
        {{3, Pair::AB, 0, 3}, {1, Pair::AB, 1, 2}, {-1, Pair::AB, 2, 1}, {-3, Pair::AB, 3, 0}},
        {{2, Pair::AB, 0, 2}, {-2, Pair::AB, 2, 0}},
        {{1, Pair::AB, 0, 1}, {-1, Pair::AB, 1, 0}}}},
      // E_3
      {{{{-2, Pair::AA, 0, 3}, {-2, Pair::AA, 1, 2}},
        {{-1, Pair::AB, 0, 3}, {-1, Pair::AB, 1, 2}, {-1, Pair::AB, 2, 1}, {-1, Pair::AB, 3, 0}},
        {{-2, Pair::BB, 0, 3}, {-2, Pair::BB, 1, 2}},
        {{4, Pair::AB, 0, 4}, {2, Pair::AB, 1, 3}, {-2, Pair::AB, 3, 1}, {-4, Pair::AB, 4, 0}},
        {{3, Pair::AB, 0, 3}, {1, Pair::AB, 1, 2}, {-1, Pair::AB, 2, 1}, {-3, Pair::AB, 3, 0}},
        {{2, Pair::AB, 0, 2}, {-2, Pair::AB, 2, 0}}}},
      // E_4
      {{{{-2, Pair::AA, 0, 4}, {-2, Pair::AA, 1, 3}, {-1, Pair::AA, 2, 2}},
        {{-1, Pair::AB, 0, 4},
         {-1, Pair::AB, 1, 3},
         {-1, Pair::AB, 2, 2},
         {-1, Pair::AB, 3, 1},
         {-1, Pair::AB, 4, 0}},
        {{-2, Pair::BB, 0, 4}, {-2, Pair::BB, 1, 3}, {-1, Pair::BB, 2, 2}},
        {{5, Pair::AB, 0, 5},
         {3, Pair::AB, 1, 4},
         {1, Pair::AB, 2, 3},
         {-1, Pair::AB, 3, 2},
         {-3, Pair::AB, 4, 1},
         {-5, Pair::AB, 5, 0}},
        {{4, Pair::AB, 0, 4}, {2, Pair::AB, 1, 3}, {-2, Pair::AB, 3, 1}, {-4, Pair::AB, 4, 0}},
        {{3, Pair::AB, 0, 3}, {1, Pair::AB, 1, 2}, {-1, Pair::AB, 2, 1}, {-3, Pair::AB, 3, 0}}}},
      // E_5
      {{{{-2, Pair::AA, 0, 5}, {-2, Pair::AA, 1, 4}, {-2, Pair::AA, 2, 3}},
        {{-1, Pair::AB, 0, 5},
         {-1, Pair::AB, 1, 4},
         {-1, Pair::AB, 2, 3},
         {-1, Pair::AB, 3, 2},
         {-1, Pair::AB, 4, 1},
         {-1, Pair::AB, 5, 0}},
        {{-2, Pair::BB, 0, 5}, {-2, Pair::BB, 1, 4}, {-2, Pair::BB, 2, 3}},
        {{6, Pair::AB, 0, 6},
         {4, Pair::AB, 1, 5},
         {2, Pair::AB, 2, 4},
         {-2, Pair::AB, 4, 2},
         {-4, Pair::AB, 5, 1},
         {-6, Pair::AB, 6, 0}},
        {{5, Pair::AB, 0, 5},
         {3, Pair::AB, 1, 4},
         {1, Pair::AB, 2, 3},
         {-1, Pair::AB, 3, 2},
         {-3, Pair::AB, 4, 1},
         {-5, Pair::AB, 5, 0}},
        {{4, Pair::AB, 0, 4}, {2, Pair::AB, 1, 3}, {-2, Pair::AB, 3, 1}, {-4, Pair::AB, 4, 0}}}},
      // E_6
      {{{{-2, Pair::AA, 0, 6}, {-2, Pair::AA, 1, 5}, {-2, Pair::AA, 2, 4}, {-1, Pair::AA, 3, 3}},
        {{-1, Pair::AB, 0, 6},
         {-1, Pair::AB, 1, 5},
         {-1, Pair::AB, 2, 4},
         {-1, Pair::AB, 3, 3},
         {-1, Pair::AB, 4, 2},
         {-1, Pair::AB, 5, 1},
         {-1, Pair::AB, 6, 0}},
        {{-2, Pair::BB, 0, 6}, {-2, Pair::BB, 1, 5}, {-2, Pair::BB, 2, 4}, {-1, Pair::BB, 3, 3}},
        {{7, Pair::AB, 0, 7},
         {5, Pair::AB, 1, 6},
         {3, Pair::AB, 2, 5},
         {1, Pair::AB, 3, 4},
         {-1, Pair::AB, 4, 3},
         {-3, Pair::AB, 5, 2},
         {-5, Pair::AB, 6, 1},
         {-7, Pair::AB, 7, 0}},
        {{6, Pair::AB, 0, 6},
         {4, Pair::AB, 1, 5},
         {2, Pair::AB, 2, 4},
         {-2, Pair::AB, 4, 2},
         {-4, Pair::AB, 5, 1},
         {-6, Pair::AB, 6, 0}},
        {{5, Pair::AB, 0, 5},
         {3, Pair::AB, 1, 4},
         {1, Pair::AB, 2, 3},
         {-1, Pair::AB, 3, 2},
         {-3, Pair::AB, 4, 1},
         {-5, Pair::AB, 5, 0}}}},
  }};
  return table;
}

RatK eval_entry(const MapCoefficients& m, const Entry& e) {
  RatK acc = RatK::zero(m.field);
  const auto d = static_cast<std::int64_t>(m.d);
  for (const auto& t : e) {
    RatK x, y;
    switch (t.kind) {
      case Pair::AA:
        x = m.A(d - t.i);
        y = m.A(d - t.j);
        break;
      case Pair::AB:
        x = m.A(d - t.i);
        y = m.B(d - t.j);
        break;
      case Pair::BB:
        x = m.B(d - t.i);
        y = m.B(d - t.j);
        break;
    }
    if (x.is_zero() || y.is_zero()) continue;
    acc += (x * y).mul_int(t.coef);
  }
  return acc;
}

XPolyK to_xk(const FieldPtr& f, const std::vector<RatK>& c) { return XPolyK(RatK::zero(f), c); }

// Least common multiple of the denominators of a row.
PolyT row_lcm(const std::vector<RatK>& row) {
  PolyT l = PolyT::constant(row.front().field(), 1);
  for (const auto& x : row) l = div_exact(l, gcd(l, x.den())) * x.den();
  return l;
}

Matrix<PolyT> clear_rows(const Matrix<RatK>& m, std::vector<PolyT>* multipliers) {
  Matrix<PolyT> out;
  for (const auto& row : m) {
    const PolyT l = row_lcm(row);
    std::vector<PolyT> r;
    r.reserve(row.size());
    for (const auto& x : row) r.push_back(x.num() * div_exact(l, x.den()));
    out.push_back(std::move(r));
    if (multipliers) multipliers->push_back(l);
  }
  return out;
}

// Back-substitution on a full-rank square echelon block followed by one
// right-hand-side column.
std::vector<RatK> back_substitute(const Echelon<PolyT>& e, std::size_t n, const FieldPtr& f) {
  std::vector<RatK> x(n, RatK::zero(f));
  for (std::size_t r = n; r-- > 0;) {
    RatK acc(e.m[r][n]);
    for (std::size_t k = r + 1; k < n; ++k) {
      if (!e.m[r][k].is_zero()) acc -= RatK(e.m[r][k]) * x[k];
    }
    x[r] = acc / RatK(e.m[r][r]);
  }
  return x;
}

}  // namespace

LinearForm6 LinearForm6::zero(const FieldPtr& f) {
  LinearForm6 z;
  for (auto& x : z.c) x = RatK::zero(f);
  z.c0 = RatK::zero(f);
  return z;
}

bool LinearForm6::is_zero() const {
  for (const auto& x : c)
    if (!x.is_zero()) return false;
  return c0.is_zero();
}

RatK LinearForm6::eval(const std::vector<RatK>& sol) const {
  if (sol.size() != kUnknowns) throw DomainError("a solution has six components");
  RatK acc = c0;
  for (std::size_t k = 0; k < kUnknowns; ++k) {
    if (!c[k].is_zero() && !sol[k].is_zero()) acc += c[k] * sol[k];
  }
  return acc;
}

LinearForm6 LinearForm6::scaled(const RatK& s) const {
  LinearForm6 r = *this;
  for (auto& x : r.c) x = x * s;
  r.c0 = r.c0 * s;
  return r;
}

MapCoefficients MapCoefficients::of(const RationalMap& phi) {
  MapCoefficients m;
  m.field = phi.field();
  m.d = phi.degree();
  for (std::size_t i = 0; i <= m.d; ++i) {
    m.a.emplace_back(phi.a(static_cast<std::int64_t>(i)));
    m.b.emplace_back(phi.b(static_cast<std::int64_t>(i)));
  }
  return m;
}

RatK MapCoefficients::A(std::int64_t i) const {
  if (i < 0 || i > static_cast<std::int64_t>(d)) return RatK::zero(field);
  return a[static_cast<std::size_t>(i)];
}

RatK MapCoefficients::B(std::int64_t i) const {
  if (i < 0 || i > static_cast<std::int64_t>(d)) return RatK::zero(field);
  return b[static_cast<std::size_t>(i)];
}

const char* to_string(ConsistencyVerdict::Status s) {
  switch (s) {
    case ConsistencyVerdict::Status::Inconsistent:
      return "Inconsistent";
    case ConsistencyVerdict::Status::UniqueSolution:
      return "UniqueSolution";
    case ConsistencyVerdict::Status::AffineSolutionSpace:
      return "AffineSolutionSpace";
  }
  return "?";
}

std::pair<XPoly, XPoly> derived_polys(const XPoly& F) { return {derivative_t(F), F.derivative()}; }

std::pair<XPolyK, XPolyK> derived_polys(const XPolyK& F) {
  return {F.map(F.zero_elem(), [](const RatK& c) { return c.derivative(); }), F.derivative()};
}

std::vector<LinearForm6> build_symbolic_identity(const MapCoefficients& m) {
  const FieldPtr& f = m.field;
  const XPolyK F = to_xk(f, m.a), G = to_xk(f, m.b);
  const auto [F1, F2] = derived_polys(F);
  const auto [G1, G2] = derived_polys(G);
  const XPolyK W = G * F2 - F * G2;
  const XPolyK FF = F * F, FG = F * G, GG = G * G;
  const XPolyK C = G * F1 - F * G1;
  const std::size_t top = 2 * m.d + 1;
  std::vector<LinearForm6> out(top + 1, LinearForm6::zero(f));
  for (std::size_t k = 0; k <= top; ++k) {
    auto& r = out[k];
    r.c[kA] = -FF.coeff(k);
    r.c[kB] = -FG.coeff(k);
    r.c[kC] = -GG.coeff(k);
    r.c[kE] = k >= 2 ? W.coeff(k - 2) : RatK::zero(f);
    r.c[kF] = k >= 1 ? W.coeff(k - 1) : RatK::zero(f);
    r.c[kG] = W.coeff(k);
    r.c0 = C.coeff(k);
  }
  return out;
}

std::vector<LinearForm6> build_symbolic_identity(const RationalMap& phi) {
  return build_symbolic_identity(MapCoefficients::of(phi));
}

RatK r_constant(const MapCoefficients& m, std::int64_t n) {
  const auto d = static_cast<std::int64_t>(m.d);
  RatK r = RatK::zero(m.field);
  for (std::int64_t i = 0; i <= n; ++i) {
    const RatK ai = m.A(d - i), bi = m.B(d - i);
    if (!ai.is_zero()) r += ai * m.B(d - n + i).derivative();
    if (!bi.is_zero()) r -= bi * m.A(d - n + i).derivative();
  }
  return r;
}

RiccatiSystem build_system_closed_form(const MapCoefficients& m) {
  RiccatiSystem sys;
  sys.field = m.field;
  const std::size_t rows = std::min<std::size_t>(6, 2 * m.d) + 1;
  const auto& table = listed_equations();
  for (std::size_t i = 0; i < rows; ++i) {
    LinearForm6 row = LinearForm6::zero(m.field);
    for (std::size_t k = 0; k < kUnknowns; ++k) row.c[k] = eval_entry(m, table[i][k]);
    row.c0 = -r_constant(m, static_cast<std::int64_t>(i));
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

RiccatiSystem build_system_closed_form(const RationalMap& phi) {
  return build_system_closed_form(MapCoefficients::of(phi));
}

RiccatiSystem build_system_full(const MapCoefficients& m) {
  auto id = build_symbolic_identity(m);
  RiccatiSystem sys;
  sys.field = m.field;
  for (std::size_t i = 0; i <= 2 * m.d; ++i) sys.rows.push_back(id[2 * m.d - i]);
  return sys;
}

ConsistencyVerdict consistency_check(const RiccatiSystem& sys) {
  ConsistencyVerdict v;
  if (sys.rows.empty()) {
    v.status = ConsistencyVerdict::Status::AffineSolutionSpace;
    v.dimension = kUnknowns;
    return v;
  }
  // Row: c_a .. c_g | -c0
  Matrix<RatK> aug;
  for (const auto& r : sys.rows) {
    std::vector<RatK> row(r.c.begin(), r.c.end());
    row.push_back(-r.c0);
    aug.push_back(std::move(row));
  }
  const auto e = bareiss(clear_rows(aug, nullptr), kUnknowns);
  v.rank_M = e.rank;
  v.rank_aug = e.rank;
  for (std::size_t r = e.rank; r < e.m.size(); ++r) {
    if (!e.m[r][kUnknowns].is_zero()) {
      v.rank_aug = e.rank + 1;
      break;
    }
  }
  if (v.rank_aug > v.rank_M) {
    v.status = ConsistencyVerdict::Status::Inconsistent;
    return v;
  }
  v.dimension = kUnknowns - v.rank_M;
  if (v.rank_M < kUnknowns) {
    v.status = ConsistencyVerdict::Status::AffineSolutionSpace;
    return v;
  }
  v.status = ConsistencyVerdict::Status::UniqueSolution;
  v.solution = back_substitute(e, kUnknowns, sys.field);
  return v;
}

Matrix<RatK> homogeneous_block(const RiccatiSystem& sys, const std::vector<std::size_t>& rows) {
  Matrix<RatK> m;
  for (auto i : rows) {
    if (i >= sys.rows.size()) throw DomainError("row index out of range");
    m.emplace_back(sys.rows[i].c.begin(), sys.rows[i].c.end());
  }
  return m;
}

SubsystemSolution unique_subsystem_solution(const RiccatiSystem& sys,
                                            const std::array<std::size_t, kUnknowns>& rows) {
  SubsystemSolution out;
  out.rows = rows;
  Matrix<RatK> aug = homogeneous_block(sys, std::vector<std::size_t>(rows.begin(), rows.end()));
  for (std::size_t k = 0; k < kUnknowns; ++k) aug[k].push_back(-sys.rows[rows[k]].c0);
  std::vector<PolyT> mult;
  const auto cleared = clear_rows(aug, &mult);
  const auto e = bareiss(cleared, kUnknowns);
  if (e.rank < kUnknowns) throw DomainError("selected 6x6 block is singular");
  // Bareiss leaves det(cleared block) in the last pivot.
  RatK det(e.m[kUnknowns - 1][kUnknowns - 1]);
  if (e.sign < 0) det = -det;
  PolyT scale = PolyT::constant(sys.field, 1);
  for (const auto& l : mult) scale = scale * l;
  out.det = det / RatK(scale);
  out.solution = back_substitute(e, kUnknowns, sys.field);
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    if (std::find(rows.begin(), rows.end(), i) != rows.end()) continue;
    out.residuals.emplace_back(i, sys.rows[i].eval(out.solution));
  }
  return out;
}

}  // namespace fqdyn
