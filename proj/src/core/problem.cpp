#include "core/problem.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qkron {

namespace {

using nlohmann::json;

constexpr double kHermHard = 1e-8;
constexpr double kHermSoft = 1e-12;

cplx read_entry(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(Status::ParseError, where + ": entry must be [re, im]");
  return cplx(j[0].get<double>(), j[1].get<double>());
}

TwoByTwo read_factor(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    fail(Status::ParseError, where + ": factor must be a 2x2 array");
  TwoByTwo t;
  for (int r = 0; r < 2; ++r) {
    if (!j[r].is_array() || j[r].size() != 2)
      fail(Status::ParseError, where + ": factor must be a 2x2 array");
    for (int c = 0; c < 2; ++c)
      t.at(r, c) = read_entry(j[r][c], where);
  }
  return t;
}

Vec2 read_bfactor(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    fail(Status::ParseError, where + ": factor must be a 2-vector");
  return {read_entry(j[0], where), read_entry(j[1], where)};
}

void check_finite(const cplx& z, const std::string& where) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    fail(Status::ParseError, where + ": non-finite entry");
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded())
    fail(Status::ParseError, "malformed instance: invalid JSON");
  if (!root.is_object())
    fail(Status::ParseError, "malformed instance: top level must be an object");

  for (const auto& item : root.items()) {
    const std::string& k = item.key();
    if (k != "n" && k != "a_terms" && k != "b_terms" && k != "kappa")
      fail(Status::ParseError, "unknown key \"" + k + "\"");
  }
  if (!root.contains("n") || !root.contains("a_terms") ||
      !root.contains("b_terms"))
    fail(Status::ParseError, "instance needs keys n, a_terms, b_terms");

  Instance inst;
  if (!root["n"].is_number_integer() || root["n"].get<int>() < 1 ||
      root["n"].get<int>() > 30)
    fail(Status::ParseError, "n must be an integer in [1, 30]");
  inst.n = root["n"].get<int>();

  const json& at = root["a_terms"];
  if (!at.is_array() || at.empty())
    fail(Status::ParseError, "a_terms must be a nonempty array");
  for (size_t i = 0; i < at.size(); ++i) {
    const json& term = at[i];
    if (!term.is_array())
      fail(Status::ParseError, "a_terms[" + std::to_string(i) +
                                   "] must be an array of factors");
    if (static_cast<int>(term.size()) != inst.n)
      fail(Status::ParseError,
           "inconsistent tensor length in a_terms[" + std::to_string(i) + "]");
    std::vector<TwoByTwo> factors;
    for (int k = 0; k < inst.n; ++k) {
      const std::string where =
          "a_terms[" + std::to_string(i) + "][" + std::to_string(k) + "]";
      TwoByTwo f = read_factor(term[k], where);
      for (const cplx& z : f.m) check_finite(z, where);
      const double defect = f.hermiticity_defect();
      if (defect > kHermHard)
        fail(Status::InvalidInstance,
             "non-Hermitian factor at (" + std::to_string(i) + "," +
                 std::to_string(k) + ")");
      if (defect > kHermSoft) {
        f = (f + f.dagger()) * cplx(0.5, 0.0);
        inst.warnings.push_back("symmetrized near-Hermitian factor at (" +
                                std::to_string(i) + "," + std::to_string(k) +
                                ")");
      }
      factors.push_back(f);
    }
    inst.a_terms.push_back(std::move(factors));
  }

  const json& bt = root["b_terms"];
  if (!bt.is_array() || bt.empty())
    fail(Status::ParseError, "b_terms must be a nonempty array");
  for (size_t j = 0; j < bt.size(); ++j) {
    const json& term = bt[j];
    if (!term.is_array())
      fail(Status::ParseError, "b_terms[" + std::to_string(j) +
                                   "] must be an array of factors");
    if (static_cast<int>(term.size()) != inst.n)
      fail(Status::ParseError,
           "inconsistent tensor length in b_terms[" + std::to_string(j) + "]");
    std::vector<Vec2> factors;
    double prod_norm = 1.0;
    for (int k = 0; k < inst.n; ++k) {
      const std::string where =
          "b_terms[" + std::to_string(j) + "][" + std::to_string(k) + "]";
      Vec2 f = read_bfactor(term[k], where);
      check_finite(f[0], where);
      check_finite(f[1], where);
      prod_norm *= norm2(f);
      factors.push_back(f);
    }
    if (prod_norm <= 0.0)
      fail(Status::InvalidInstance,
           "b term " + std::to_string(j) + " is identically zero");
    inst.b_terms.push_back(std::move(factors));
  }

  if (root.contains("kappa")) {
    if (!root["kappa"].is_number())
      fail(Status::ParseError, "kappa must be a number");
    const double kappa = root["kappa"].get<double>();
    if (!std::isfinite(kappa) || kappa < 1.0)
      fail(Status::ParseError, "kappa must be finite and >= 1");
    inst.kappa_file = kappa;
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Status::IoError, "cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::vector<double> a_term_norms(const Instance& inst) {
  std::vector<double> out;
  for (const auto& term : inst.a_terms) {
    double p = 1.0;
    for (const TwoByTwo& f : term) p *= spectral_norm_2x2(f);
    out.push_back(p);
  }
  return out;
}

std::vector<double> b_term_norms(const Instance& inst) {
  std::vector<double> out;
  for (const auto& term : inst.b_terms) {
    double p = 1.0;
    for (const Vec2& f : term) p *= norm2(f);
    out.push_back(p);
  }
  return out;
}

double assembled_b_norm2(const Instance& inst) {
  // <b|b> = sum_{j1,j2} prod_k <b[j2][k] | b[j1][k]>; real by symmetry.
  cplx total = 0.0;
  for (const auto& bj1 : inst.b_terms) {
    for (const auto& bj2 : inst.b_terms) {
      cplx prod = 1.0;
      for (int k = 0; k < inst.n; ++k) prod *= dot(bj2[k], bj1[k]);
      total += prod;
    }
  }
  return total.real();
}

Instance normalize(const Instance& inst) {
  Instance out = inst;

  // Stage 1: rebalance scalars within each term (term value unchanged).
  for (size_t i = 0; i < out.a_terms.size(); ++i) {
    double carried = 1.0;
    for (int k = inst.n - 1; k >= 1; --k) {
      const double nk = spectral_norm_2x2(out.a_terms[i][k]);
      if (nk <= 0.0)
        fail(Status::InvalidInstance,
             "zero term: a_terms[" + std::to_string(i) +
                 "] is an all-zero tensor product");
      out.a_terms[i][k] = out.a_terms[i][k] * cplx(1.0 / nk, 0.0);
      carried *= nk;
    }
    out.a_terms[i][0] = out.a_terms[i][0] * cplx(carried, 0.0);
    if (spectral_norm_2x2(out.a_terms[i][0]) <= 0.0)
      fail(Status::InvalidInstance,
           "zero term: a_terms[" + std::to_string(i) +
               "] is an all-zero tensor product");
  }
  for (size_t j = 0; j < out.b_terms.size(); ++j) {
    double carried = 1.0;
    for (int k = inst.n - 1; k >= 1; --k) {
      const double nk = norm2(out.b_terms[j][k]);
      if (nk <= 0.0)
        fail(Status::InvalidInstance,
             "zero term: b_terms[" + std::to_string(j) +
                 "] is an all-zero tensor product");
      out.b_terms[j][k] = {out.b_terms[j][k][0] / nk, out.b_terms[j][k][1] / nk};
      carried *= nk;
    }
    out.b_terms[j][0] = {out.b_terms[j][0][0] * carried,
                         out.b_terms[j][0][1] * carried};
    if (norm2(out.b_terms[j][0]) <= 0.0)
      fail(Status::InvalidInstance,
           "zero term: b_terms[" + std::to_string(j) +
               "] is an all-zero tensor product");
  }

  // Stage 2: one common scalar per side; shrinks only, so an instance this
  // function has already produced maps to itself.
  std::vector<double> tnorms = a_term_norms(out);
  double worst = 0.0;
  for (double t : tnorms) worst = std::max(worst, t);
  double a_norm;
  if (out.n <= kDenseCap) {
    a_norm = spectral_norm(expand_dense(out).a);
  } else {
    a_norm = 0.0;  // triangle-inequality bound
    for (double t : tnorms) a_norm += t;
  }
  worst = std::max(worst, a_norm);
  const double beta = worst > 1.0 ? 1.0 / worst : 1.0;
  if (beta < 1.0)
    for (auto& term : out.a_terms)
      term[0] = term[0] * cplx(beta, 0.0);

  std::vector<double> bnorms = b_term_norms(out);
  double bworst = 0.0;
  for (double t : bnorms) bworst = std::max(bworst, t);
  const double gamma = bworst > 1.0 ? 1.0 / bworst : 1.0;
  if (gamma < 1.0)
    for (auto& term : out.b_terms)
      term[0] = {term[0][0] * gamma, term[0][1] * gamma};

  return out;
}

DenseSystem expand_dense(const Instance& inst, int cap) {
  if (inst.n > cap)
    fail(Status::CapExceeded,
         "expand_dense: n = " + std::to_string(inst.n) + " exceeds cap " +
             std::to_string(cap));
  const Eigen::Index dim = Eigen::Index(1) << inst.n;
  DenseSystem sys;
  sys.a = Mat::Zero(dim, dim);
  for (const auto& term : inst.a_terms) sys.a += kron_chain(term);
  sys.b = Vec::Zero(dim);
  for (const auto& term : inst.b_terms) sys.b += kron_chain(term);
  return sys;
}

double condition_number(const Instance& inst, int cap) {
  if (inst.n <= cap) {
    SingularRange r = singular_range(expand_dense(inst, cap).a);
    // smax == 0 (terms cancel to the zero matrix) must trip this too.
    if (r.smax <= 0.0 || r.smin < 1e-12 * r.smax)
      fail(Status::Singular, "assembled A is numerically singular");
    return std::max(r.smax / r.smin, 1.0);
  }
  if (inst.kappa_file) return *inst.kappa_file;
  fail(Status::CapExceeded,
       "condition_number: n above dense cap and no kappa in the instance");
}

}  // namespace qkron
