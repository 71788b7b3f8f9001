#include "g2t/kform.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace g2t {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotLieAlgebra: return "NotLieAlgebra";
    case ErrorKind::NotStable: return "NotStable";
    case ErrorKind::NotDefinite: return "NotDefinite";
    case ErrorKind::NotCompatible: return "NotCompatible";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotSelfDual: return "NotSelfDual";
    case ErrorKind::NotG2T: return "NotG2T";
    case ErrorKind::NotCentral: return "NotCentral";
    case ErrorKind::ZeroLeeForm: return "ZeroLeeForm";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::SpanNotClosed: return "SpanNotClosed";
    case ErrorKind::OrientationFlip: return "OrientationFlip";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorKind::IOError: return "IOError";
  }
  return "Unknown";
}

Mask mask_of(const std::vector<int>& indices) {
  Mask m = 0;
  for (int i : indices) {
    if (i < 1 || i > kMaxDim) throw Error(ErrorKind::IndexOutOfRange, "index " + std::to_string(i));
    const Mask bit = Mask{1} << (i - 1);
    if (m & bit) throw Error(ErrorKind::IndexOutOfRange, "repeated index " + std::to_string(i));
    m |= bit;
  }
  return m;
}

Mask mask_of(std::initializer_list<int> indices) { return mask_of(std::vector<int>(indices)); }

std::vector<int> indices_of(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return out;
}

int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

struct BasisTables {
  // masks[n][k] and index[n][mask]
  std::array<std::array<std::vector<Mask>, kMaxDim + 1>, kMaxDim + 1> masks;
  std::array<std::vector<int>, kMaxDim + 1> index;

  BasisTables() {
    for (int n = 0; n <= kMaxDim; ++n) {
      index[n].assign(std::size_t{1} << n, -1);
      for (int k = 0; k <= n; ++k) {
        auto& out = masks[n][k];
        std::vector<int> combo(k);
        for (int i = 0; i < k; ++i) combo[i] = i;
        while (true) {
          Mask m = 0;
          for (int c : combo) m |= Mask{1} << c;
          index[n][m] = static_cast<int>(out.size());
          out.push_back(m);
          int i = k - 1;
          while (i >= 0 && combo[i] == n - k + i) --i;
          if (i < 0) break;
          ++combo[i];
          for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
        }
      }
    }
  }
};

const BasisTables& tables() {
  static const BasisTables t;
  return t;
}

}  // namespace

const std::vector<Mask>& basis_masks(int n, int k) {
  if (n < 0 || n > kMaxDim || k < 0 || k > n) throw Error(ErrorKind::DegreeMismatch, "no such exterior power");
  return tables().masks[n][k];
}

int basis_index(int n, int k, Mask m) {
  if (n < 0 || n > kMaxDim || m > full_mask(n) || popcount(m) != k)
    throw Error(ErrorKind::IndexOutOfRange, "monomial outside the basis");
  return tables().index[n][m];
}

std::string format_form(const KForm& f, int precision) {
  if (f.is_zero()) return "0";
  std::string out;
  char buf[64];
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    const double a = std::abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    const bool unit = std::abs(a - 1.0) < 1e-12 && f.degree() > 0;
    if (!unit) {
      std::snprintf(buf, sizeof buf, "%.*g", precision, a);
      out += buf;
      if (f.degree() > 0) out += " ";
    }
    if (f.degree() > 0) {
      out += "e";
      for (int i : indices_of(m)) out += std::to_string(i);
    }
  }
  return out;
}

KForm parse_form(int dim, std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) -> KForm {
    throw Error(ErrorKind::ParseError, why + " in \"" + std::string(text) + "\"");
  };

  struct Term {
    double c;
    std::vector<int> idx;
    bool has_monomial;
  };
  std::vector<Term> terms;
  skip();
  if (pos == text.size()) fail("empty form");
  while (pos < text.size()) {
    double sign = 1.0;
    skip();
    if (!terms.empty()) {
      if (pos >= text.size() || (text[pos] != '+' && text[pos] != '-')) fail("expected + or -");
      sign = text[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    } else if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      sign = text[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    }
    skip();
    double c = 1.0;
    bool has_number = false;
    if (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
      std::string num(text.substr(pos));
      char* end = nullptr;
      c = std::strtod(num.c_str(), &end);
      if (end == num.c_str()) fail("bad number");
      pos += static_cast<std::size_t>(end - num.c_str());
      has_number = true;
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip();
      }
    }
    Term t{sign * c, {}, false};
    if (pos < text.size() && text[pos] == 'e') {
      ++pos;
      t.has_monomial = true;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        t.idx.push_back(text[pos] - '0');
        ++pos;
      }
      if (t.idx.empty()) fail("monomial without indices");
    } else if (!has_number) {
      fail("expected a term");
    }
    terms.push_back(std::move(t));
    skip();
  }
  const int degree = static_cast<int>(terms.front().idx.size());
  KForm out(dim, degree);
  for (auto& t : terms) {
    if (static_cast<int>(t.idx.size()) != degree) fail("mixed degrees");
    if (degree == 0)
      out.add(0, t.c);
    else
      out.add_indices(t.idx, t.c);
  }
  return out;
}

}  // namespace g2t
