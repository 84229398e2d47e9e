#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tgr/georank.hpp"
#include "tgr/tensor.hpp"

namespace tgr {

using json = nlohmann::ordered_json;

namespace detail {

inline std::pair<std::string, std::string> split_ratio(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return {s, "1"};
  return {s.substr(0, slash), s.substr(slash + 1)};
}

template <class F>
F value_from_string(const Ring<F>& ring, const std::string& s) {
  if (s.empty()) throw ParseError("empty numeric literal");
  const auto [num, den] = split_ratio(s);
  return ring.from_strings(num, den);
}

}  // namespace detail

// Tensor files: {"dims":[...],"field":"qq"|"fp:<p>","entries":[{"idx":[...],
// "val":"<num>"|"<num>/<den>"}...]}, zero entries omitted, indices 0-based.
template <class F>
json tensor_to_json(const Tensor<F>& t) {
  json out;
  out["dims"] = t.dims();
  out["field"] = t.field().label();
  json entries = json::array();
  const int n = t.order();
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (long off = 0; off < t.size(); ++off) {
    const F& v = t.flat(off);
    if (v.is_zero()) continue;
    long o = off;
    for (int k = n - 1; k >= 0; --k) {
      idx[static_cast<std::size_t>(k)] = static_cast<int>(o % t.dims()[k]);
      o /= t.dims()[k];
    }
    json e;
    e["idx"] = idx;
    e["val"] = v.str();
    entries.push_back(std::move(e));
  }
  out["entries"] = std::move(entries);
  return out;
}

inline FieldSpec tensor_json_field(const json& j) {
  if (!j.is_object() || !j.contains("field") || !j["field"].is_string())
    throw ParseError("tensor file needs a \"field\" label");
  return FieldSpec::parse(j["field"].get<std::string>());
}

// fs may reinterpret the entries over a different field than the file labels
template <class F>
Tensor<F> tensor_from_json(const json& j, const FieldSpec& fs) {
  if (!j.is_object() || !j.contains("dims") || !j["dims"].is_array())
    throw ParseError("tensor file needs a \"dims\" array");
  std::vector<int> dims;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer() || d.get<long>() < 1) throw ParseError("tensor dimensions must be positive integers");
    dims.push_back(d.get<int>());
  }
  Tensor<F> t(fs, dims);
  const Ring<F> sc = t.scalar_ring();
  if (!j.contains("entries") || !j["entries"].is_array()) throw ParseError("tensor file needs an \"entries\" array");
  for (const auto& e : j["entries"]) {
    if (!e.is_object() || !e.contains("idx") || !e.contains("val")) throw ParseError("tensor entry needs idx and val");
    std::vector<int> idx;
    for (const auto& i : e["idx"]) {
      if (!i.is_number_integer()) throw ParseError("tensor index must be an integer");
      idx.push_back(i.get<int>());
    }
    if (static_cast<int>(idx.size()) != t.order()) throw ParseError("tensor index has wrong length");
    for (int k = 0; k < t.order(); ++k)
      if (idx[static_cast<std::size_t>(k)] < 0 || idx[static_cast<std::size_t>(k)] >= dims[static_cast<std::size_t>(k)])
        throw ParseError("tensor index out of range");
    if (!e["val"].is_string()) throw ParseError("tensor value must be a string literal");
    t.at(idx) = detail::value_from_string(sc, e["val"].get<std::string>());
  }
  return t;
}

// Pencil files: {"rows":a,"cols":b,"vars":c,"entries":[{"i":..,"j":..,
// "form":[c coefficient strings]}...]}; the field comes from the run config.
template <class F>
json pencil_to_json(const LinearMatrix<F>& e) {
  json out;
  out["rows"] = e.rows;
  out["cols"] = e.cols;
  out["vars"] = e.nvars();
  json entries = json::array();
  for (int i = 0; i < e.rows; ++i)
    for (int jx = 0; jx < e.cols; ++jx) {
      const Polynomial<F>& p = e.at(i, jx);
      if (p.is_zero()) continue;
      json ent;
      ent["i"] = i;
      ent["j"] = jx;
      std::vector<std::string> form;
      for (int v = 0; v < e.nvars(); ++v) form.push_back(p.coeff(Monomial::var(v)).str());
      ent["form"] = std::move(form);
      entries.push_back(std::move(ent));
    }
  out["entries"] = std::move(entries);
  return out;
}

template <class F>
LinearMatrix<F> pencil_from_json(const json& j, const FieldSpec& fs) {
  for (const char* key : {"rows", "cols", "vars"})
    if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer() || j[key].get<long>() < 0)
      throw ParseError(std::string("pencil file needs a nonnegative \"") + key + "\"");
  const int rows = j["rows"].get<int>(), cols = j["cols"].get<int>(), vars = j["vars"].get<int>();
  if (vars > kMaxVars) throw LimitError("pencil has too many variables");
  const Ring<F> ring = make_ring<F>(fs, vars);
  const Ring<F> sc = make_ring<F>(fs, 0);
  LinearMatrix<F> e(ring, rows, cols);
  if (!j.contains("entries") || !j["entries"].is_array()) throw ParseError("pencil file needs an \"entries\" array");
  for (const auto& ent : j["entries"]) {
    if (!ent.is_object() || !ent.contains("i") || !ent.contains("j") || !ent.contains("form"))
      throw ParseError("pencil entry needs i, j and form");
    const int i = ent["i"].get<int>(), jx = ent["j"].get<int>();
    if (i < 0 || i >= rows || jx < 0 || jx >= cols) throw ParseError("pencil entry position out of range");
    if (!ent["form"].is_array() || static_cast<int>(ent["form"].size()) != vars)
      throw ParseError("pencil form must list one coefficient per variable");
    std::vector<Term<F>> ts;
    for (int v = 0; v < vars; ++v) {
      if (!ent["form"][static_cast<std::size_t>(v)].is_string()) throw ParseError("pencil coefficient must be a string");
      F c = detail::value_from_string(sc, ent["form"][static_cast<std::size_t>(v)].get<std::string>());
      if (!c.is_zero()) ts.push_back({Monomial::var(v), std::move(c)});
    }
    e.at(i, jx) = Polynomial<F>::from_terms(ring, std::move(ts));
  }
  return e;
}

inline json gr_report_to_json(const GRReport& rep, std::uint64_t seed) {
  json out;
  out["gr"] = rep.value;
  json axes = json::array();
  for (const auto& axis : rep.per_axis) {
    json pairs = json::array();
    for (const auto& [i, val] : axis) pairs.push_back(json::array({i, val}));
    axes.push_back(std::move(pairs));
  }
  out["per_axis"] = std::move(axes);
  out["seed"] = seed;
  return out;
}

}  // namespace tgr
