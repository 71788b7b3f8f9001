#include "g2t/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "g2t/errors.hpp"
#include "g2t/exterior.hpp"

namespace g2t {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

int index_in_range(const json& j, int dim) {
  if (!j.is_number_integer()) fail("indices must be integers");
  const int i = j.get<int>();
  if (i < 1 || i > dim) fail("index " + std::to_string(i) + " out of range 1.." + std::to_string(dim));
  return i;
}

double number(const json& j) {
  if (!j.is_number()) fail("expected a number");
  return j.get<double>();
}

KForm form_from_terms(int dim, int degree, const json& terms) {
  if (!terms.is_array()) fail("\"terms\" must be an array");
  if (degree < 0 || degree > dim) fail("degree out of range");
  KForm f(dim, degree);
  for (const auto& t : terms) {
    if (!t.is_array() || t.size() != 2 || !t[1].is_array()) fail("terms are [coefficient, [indices]]");
    std::vector<int> idx;
    for (const auto& i : t[1]) idx.push_back(index_in_range(i, dim));
    if (static_cast<int>(idx.size()) != degree) fail("term has the wrong number of indices");
    try {
      f.add_indices(idx, number(t[0]));
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  return f;
}

KForm form_from_json(int dim, const json& j) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("terms")) fail("a form needs \"degree\" and \"terms\"");
  if (!j["degree"].is_number_integer()) fail("\"degree\" must be an integer");
  return form_from_terms(dim, j["degree"].get<int>(), j["terms"]);
}

json terms_json(const KForm& f) {
  json terms = json::array();
  for (Mask m : basis_masks(f.dim(), f.degree())) {
    const double c = f[m];
    if (c != 0.0) terms.push_back(json::array({c, indices_of(m)}));
  }
  return terms;
}

json form_json(const KForm& f) { return json{{"degree", f.degree()}, {"terms", terms_json(f)}}; }

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

AlgebraDocument parse_algebra_json(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object()) fail("top level must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) fail("missing integer \"dim\"");
  const int n = j["dim"].get<int>();
  if (n < 1 || n > kMaxDim) fail("\"dim\" must be between 1 and " + std::to_string(kMaxDim));

  AlgebraDocument doc;
  const bool has_brackets = j.contains("brackets"), has_d = j.contains("d");
  if (has_brackets == has_d) fail("exactly one of \"brackets\" and \"d\" is required");
  if (has_brackets) {
    if (j.contains("isotropy")) fail("\"isotropy\" needs a coboundary table");
    std::vector<Bracket> br;
    for (const auto& b : j["brackets"]) {
      if (!b.is_array() || b.size() != 4) fail("brackets are [i, j, k, c]");
      br.push_back({index_in_range(b[0], n), index_in_range(b[1], n), index_in_range(b[2], n), number(b[3])});
    }
    doc.alg = AlgebraSpec::from_brackets(n, br);
  } else {
    const json& dj = j["d"];
    if (!dj.is_object()) fail("\"d\" must map indices to 2-form terms");
    std::vector<KForm> de(n, KForm(n, 2));
    for (const auto& [key, terms] : dj.items()) {
      int i = 0;
      try {
        std::size_t pos = 0;
        i = std::stoi(key, &pos);
        if (pos != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        fail("keys of \"d\" must be indices, got '" + key + "'");
      }
      if (i < 1 || i > n) fail("d index out of range");
      de[i - 1] = form_from_terms(n, 2, terms);
    }
    std::vector<Eigen::MatrixXd> iso;
    if (j.contains("isotropy")) {
      for (const auto& h : j["isotropy"]) {
        Eigen::MatrixXd H(n, n);
        std::vector<double> flat;
        if (!h.is_array()) fail("isotropy generators are arrays");
        for (const auto& row : h) {
          if (row.is_array())
            for (const auto& x : row) flat.push_back(number(x));
          else
            flat.push_back(number(row));
        }
        if (static_cast<int>(flat.size()) != n * n) fail("isotropy generator must have n*n entries");
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) H(r, c) = flat[static_cast<std::size_t>(r * n + c)];
        iso.push_back(H);
      }
    }
    doc.alg = AlgebraSpec::from_coboundary(std::move(de), std::move(iso));
  }
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail("\"name\" must be a string");
    doc.alg.name = j["name"].get<std::string>();
  }
  if (j.contains("forms")) {
    if (!j["forms"].is_object()) fail("\"forms\" must be an object");
    for (const auto& [name, f] : j["forms"].items()) doc.forms[name] = form_from_json(n, f);
  }
  if (j.contains("spans")) {
    if (!j["spans"].is_object()) fail("\"spans\" must be an object");
    for (const auto& [name, list] : j["spans"].items()) {
      if (!list.is_array()) fail("spans are arrays of forms");
      std::vector<KForm> forms;
      for (const auto& f : list) forms.push_back(form_from_json(n, f));
      doc.spans[name] = std::move(forms);
    }
  }
  const double r = d_squared_residual(doc.alg);
  if (r > 1e-9) throw Error(ErrorKind::NotLieAlgebra, "d^2 does not vanish (residual " + std::to_string(r) + ")");
  return doc;
}

AlgebraDocument load_algebra_file(const std::string& path) { return parse_algebra_json(read_file(path)); }

std::string to_canonical_json(const AlgebraDocument& doc) {
  const AlgebraSpec& a = doc.alg;
  json j;
  j["dim"] = a.dim();
  if (!a.name.empty()) j["name"] = a.name;
  if (a.defined_by_brackets()) {
    json br = json::array();
    for (const auto& b : a.brackets()) br.push_back(json::array({b.i, b.j, b.k, b.c}));
    j["brackets"] = br;
  } else {
    json dj = json::object();
    for (int i = 1; i <= a.dim(); ++i)
      if (!a.de(i).is_zero()) dj[std::to_string(i)] = terms_json(a.de(i));
    j["d"] = dj;
    if (a.has_isotropy()) {
      json iso = json::array();
      for (const auto& H : a.isotropy()) {
        json flat = json::array();
        for (int r = 0; r < H.rows(); ++r)
          for (int c = 0; c < H.cols(); ++c) flat.push_back(H(r, c) == 0.0 ? 0.0 : H(r, c));
        iso.push_back(flat);
      }
      j["isotropy"] = iso;
    }
  }
  if (!doc.forms.empty()) {
    json forms = json::object();
    for (const auto& [name, f] : doc.forms) forms[name] = form_json(f);
    j["forms"] = forms;
  }
  if (!doc.spans.empty()) {
    json spans = json::object();
    for (const auto& [name, list] : doc.spans) {
      json arr = json::array();
      for (const auto& f : list) arr.push_back(form_json(f));
      spans[name] = arr;
    }
    j["spans"] = spans;
  }
  return j.dump(2) + "\n";
}

AlgebraDocument document_of(const CatalogEntry& entry) { return {entry.alg, entry.forms, entry.spans}; }

KForm parse_form_json(int dim, const std::string& text) {
  const json j = parse_text(text);
  if (j.is_object() && j.contains("terms")) return form_from_json(dim, j);
  if (j.is_object() && j.contains("forms") && j["forms"].is_object() && j["forms"].size() == 1)
    return form_from_json(dim, j["forms"].begin().value());
  fail("expected a form object or a document with exactly one form");
}

KForm load_form_file(int dim, const std::string& path) { return parse_form_json(dim, read_file(path)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IOError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IOError, "cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(ErrorKind::IOError, "write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::IOError, "cannot rename onto '" + path + "'");
  }
}

}  // namespace g2t
