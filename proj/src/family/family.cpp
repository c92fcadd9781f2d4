#include <hmlab/family.hpp>

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace hmlab::family {

bool operator==(const Monomial& a, const Monomial& b) {
  return a.coeff == b.coeff && a.exps == b.exps;
}
bool operator==(const Form& a, const Form& b) { return a.terms == b.terms; }
bool operator==(const PolynomialFamily& a, const PolynomialFamily& b) {
  return a.n == b.n && a.d == b.d && a.F == b.F &&
         a.birch_assertion == b.birch_assertion;
}

PolynomialFamily identity_family() {
  PolynomialFamily fam;
  fam.n = 2;
  fam.d = 1;
  fam.F[0].terms = {Monomial{1, {1, 0, 0}}};
  fam.F[1].terms = {Monomial{1, {0, 1, 0}}};
  fam.F[2].terms = {Monomial{1, {0, 0, 1}}};
  fam.birch_assertion = BirchAssertion::checked;
  return fam;
}

bool well_formed(const PolynomialFamily& fam) {
  // d = 0 (constant forms) is allowed for measure probes; the text format
  // and the counting paths require d >= 1.
  if (fam.n < 0 || fam.d < 0) return false;
  for (const Form& form : fam.F) {
    if (form.terms.empty()) return false;
    for (const Monomial& mono : form.terms) {
      if (mono.coeff == 0) return false;
      if ((int)mono.exps.size() != fam.n + 1) return false;
      long total = 0;
      for (int e : mono.exps) {
        if (e < 0) return false;
        total += e;
      }
      if (total != fam.d) return false;
    }
  }
  return true;
}

i64 evaluate_form(const Form& form, const std::vector<i64>& k) {
  i128 total = 0;
  for (const Monomial& mono : form.terms) {
    i128 term = mono.coeff;
    for (size_t j = 0; j < mono.exps.size(); ++j) {
      if (j >= k.size()) throw std::invalid_argument("evaluate_form: point has too few coordinates");
      for (int e = 0; e < mono.exps[j]; ++e) {
        term *= k[j];
        if (term > INT64_MAX || term < INT64_MIN) {
          throw std::overflow_error("evaluate_form: monomial exceeds 64-bit range");
        }
      }
    }
    total += term;
    if (total > INT64_MAX || total < INT64_MIN) {
      throw std::overflow_error("evaluate_form: accumulated value exceeds 64-bit range");
    }
  }
  return (i64)total;
}

Triple evaluate_family(const PolynomialFamily& fam, const std::vector<i64>& k) {
  if ((int)k.size() != fam.n + 1) {
    throw std::invalid_argument("evaluate_family: point dimension != n+1");
  }
  return {evaluate_form(fam.F[0], k), evaluate_form(fam.F[1], k),
          evaluate_form(fam.F[2], k)};
}

namespace {

// Splits a line into whitespace-separated tokens, dropping '#' comments.
std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

i64 parse_int(const std::string& tok, const char* what) {
  i64 value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw std::invalid_argument(std::string("parse_family: bad ") + what + " '" + tok + "'");
  }
  return value;
}

}  // namespace

PolynomialFamily parse_family(std::string_view text) {
  PolynomialFamily fam;
  bool saw_n = false, saw_d = false;
  std::array<bool, 3> saw_form = {false, false, false};

  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;

    std::vector<std::string> tok = tokenize(line);
    if (tok.empty()) continue;

    if (tok[0] == "n") {
      if (tok.size() != 2) throw std::invalid_argument("parse_family: 'n' wants one value");
      i64 v = parse_int(tok[1], "n");
      if (v < 0 || v > 16) throw std::invalid_argument("parse_family: n out of range [0,16]");
      fam.n = (int)v;
      saw_n = true;
    } else if (tok[0] == "d") {
      if (tok.size() != 2) throw std::invalid_argument("parse_family: 'd' wants one value");
      i64 v = parse_int(tok[1], "d");
      if (v < 1 || v > 16) throw std::invalid_argument("parse_family: d out of range [1,16]");
      fam.d = (int)v;
      saw_d = true;
    } else if (tok[0] == "F0" || tok[0] == "F1" || tok[0] == "F2") {
      if (!saw_n || !saw_d) {
        throw std::invalid_argument("parse_family: n and d must precede monomial lines");
      }
      int which = tok[0][1] - '0';
      if (tok.size() != (size_t)fam.n + 3) {
        throw std::invalid_argument("parse_family: monomial line wants coefficient plus n+1 exponents");
      }
      Monomial mono;
      mono.coeff = parse_int(tok[1], "coefficient");
      if (mono.coeff == 0) throw std::invalid_argument("parse_family: zero coefficient");
      long degree = 0;
      for (int j = 0; j <= fam.n; ++j) {
        i64 e = parse_int(tok[2 + j], "exponent");
        if (e < 0 || e > 16) throw std::invalid_argument("parse_family: exponent out of range [0,16]");
        degree += e;
        mono.exps.push_back((int)e);
      }
      if (degree != fam.d) {
        throw std::invalid_argument("parse_family: monomial degree != d (inhomogeneous form)");
      }
      fam.F[which].terms.push_back(std::move(mono));
      saw_form[which] = true;
    } else if (tok[0] == "assert" && tok.size() == 2 && tok[1] == "checked") {
      fam.birch_assertion = BirchAssertion::checked;
    } else {
      throw std::invalid_argument("parse_family: unknown directive '" + tok[0] + "'");
    }
  }

  if (!saw_n || !saw_d) throw std::invalid_argument("parse_family: missing n or d");
  if (!saw_form[0] || !saw_form[1] || !saw_form[2]) {
    throw std::invalid_argument("parse_family: every form F0, F1, F2 needs at least one monomial");
  }
  return fam;
}

std::string format_family(const PolynomialFamily& fam) {
  std::ostringstream out;
  out << "n " << fam.n << "\n";
  out << "d " << fam.d << "\n";
  if (fam.birch_assertion == BirchAssertion::checked) out << "assert checked\n";
  for (int i = 0; i < 3; ++i) {
    for (const Monomial& mono : fam.F[i].terms) {
      out << "F" << i << " " << mono.coeff;
      for (int e : mono.exps) out << " " << e;
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace hmlab::family
