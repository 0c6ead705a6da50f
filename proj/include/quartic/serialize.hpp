#pragma once

#include "quartic/descent.hpp"

#include <json.hpp>

#include <fstream>
#include <filesystem>

namespace quartic {

using nlohmann::json;

inline std::string rat_str(const Rat& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

/// TernaryForm as [[a, b, c, "num", "den"], ...] with exponent triples in
/// ascending lexicographic order.
inline json form_to_json(const TernaryZ& f) {
  json out = json::array();
  const auto& ms = monomials(f.degree());
  for (std::size_t i = ms.size(); i-- > 0;) {
    if (f.coeffs()[i] == 0) continue;
    out.push_back(json::array(
        {ms[i][0], ms[i][1], ms[i][2], f.coeffs()[i].str(), "1"}));
  }
  return out;
}

inline TernaryZ form_from_json(int degree, const json& j) {
  TernaryZ f(degree);
  for (const auto& e : j) {
    Int n(e[3].get<std::string>());
    Int d(e[4].get<std::string>());
    if (d != 1) throw std::invalid_argument("integral form expected");
    f.coeff(e[0].get<int>(), e[1].get<int>()) = n;
  }
  return f;
}

inline json line_to_json(const std::array<Int, 3>& l) {
  return json::array({l[0].str(), l[1].str(), l[2].str()});
}
inline std::array<Int, 3> line_from_json(const json& j) {
  return {Int(j[0].get<std::string>()), Int(j[1].get<std::string>()),
          Int(j[2].get<std::string>())};
}

inline json curve_to_json(const LabelledQuartic& c) {
  json out;
  out["moduli"] = json::array({json::array({c.moduli[0].str(), c.moduli[1].str()}),
                               json::array({c.moduli[2].str(), c.moduli[3].str()}),
                               json::array({c.moduli[4].str(), c.moduli[5].str()})});
  out["f"] = form_to_json(c.f);
  out["lambda"] = c.lambda.str();
  out["net"] = json::array(
      {form_to_json(c.net[0]), form_to_json(c.net[1]), form_to_json(c.net[2])});
  json bits, contacts;
  for (int li = 0; li < 28; ++li) {
    const std::string key = all_labels()[li].str();
    bits[key] = line_to_json(c.lines[li]);
    const Contact& ct = c.contacts[li];
    contacts[key] = {{"scale", rat_str(ct.scale)},
                     {"q", json::array({ct.q[0].str(), ct.q[1].str(), ct.q[2].str()})},
                     {"P", line_to_json(ct.param.P)},
                     {"Q", line_to_json(ct.param.Q)}};
  }
  out["bitangents"] = bits;
  out["contacts"] = contacts;
  json syz = json::array();
  for (const auto& sd : c.syzygies) {
    json q = json::array();
    for (int li : sd.labels) q.push_back(all_labels()[li].str());
    syz.push_back({{"quadruple", q},
                   {"delta", rat_str(sd.delta)},
                   {"c", rat_str(sd.c)},
                   {"Q", form_to_json(sd.conic)}});
  }
  out["syzygies"] = syz;
  return out;
}

inline LabelledQuartic curve_from_json(const json& j) {
  LabelledQuartic c;
  for (int k = 0; k < 3; ++k) {
    c.moduli[2 * k] = Int(j["moduli"][k][0].get<std::string>());
    c.moduli[2 * k + 1] = Int(j["moduli"][k][1].get<std::string>());
  }
  c.f = form_from_json(4, j["f"]);
  c.lambda = Int(j["lambda"].get<std::string>());
  for (int k = 0; k < 3; ++k) c.net[k] = form_from_json(3, j["net"][k]);
  for (int li = 0; li < 28; ++li) {
    const std::string key = all_labels()[li].str();
    c.lines[li] = line_from_json(j["bitangents"].at(key));
    const json& ct = j["contacts"].at(key);
    Contact contact;
    contact.scale = parse_rat(ct["scale"].get<std::string>());
    contact.q = BinaryZ{Int(ct["q"][0].get<std::string>()),
                        Int(ct["q"][1].get<std::string>()),
                        Int(ct["q"][2].get<std::string>())};
    contact.param.P = line_from_json(ct["P"]);
    contact.param.Q = line_from_json(ct["Q"]);
    c.contacts[li] = contact;
  }
  for (const auto& s : j["syzygies"]) {
    SyzygeticData sd;
    for (int t = 0; t < 4; ++t)
      sd.labels[t] = label_index(Label::parse(s["quadruple"][t].get<std::string>()));
    std::sort(sd.labels.begin(), sd.labels.end());
    sd.delta = parse_rat(s["delta"].get<std::string>());
    sd.c = parse_rat(s["c"].get<std::string>());
    sd.conic = form_from_json(2, s["Q"]);
    c.syzygies.push_back(sd);
  }
  return c;
}

/// Schema check + structural verification of a loaded bundle: contact
/// identities and syzygy identities are re-verified exactly.
inline void verify_bundle(const LabelledQuartic& c) {
  for (int li = 0; li < 28; ++li) {
    const Contact& ct = c.contacts[li];
    BinaryZ r = restrict_to_line(c.f, ct.param);
    BinaryZ q2 = ct.q * ct.q;
    for (int k = 0; k <= 4; ++k)
      if (Rat(r[k]) != ct.scale * Rat(q2[k]))
        throw std::invalid_argument("bundle fails a contact identity");
    auto cr = cross(ct.param.P, ct.param.Q);
    if (cr != c.lines[li])
      throw std::invalid_argument("bundle parametrization mismatch");
  }
  if (c.syzygies.size() != syzygetic_quadruples().size())
    throw std::invalid_argument("bundle has an incomplete syzygy table");
}

inline json report_to_json(const SelmerReport& r) {
  json out;
  json S = json::array();
  for (const auto& v : r.S) S.push_back(v.str());
  out["S"] = S;
  out["dimL"] = r.dim_l;
  out["dimW"] = r.dim_w;
  if (r.w1_empty)
    out["W1"] = "empty";
  else
    out["W1"] = {{"dim", r.dim_w1}};
  out["survivors"] = r.survivors;
  json filters = json::array();
  for (const auto& f : r.filters) {
    json e = {{"p", f.p.str()}, {"imageSize", f.image_size}};
    if (f.skipped) e["skipped"] = true;
    filters.push_back(e);
  }
  out["filters"] = filters;
  out["jacSelmer"] = {{"dim", r.jac_dim}, {"exact", r.jac_exact}};
  if (r.local_obstruction) out["localObstruction"] = r.local_obstruction->str();
  json pts = json::array();
  for (const auto& P : r.points) pts.push_back(line_to_json(P));
  out["points"] = pts;
  out["conclusion"] = to_string(r.conclusion);
  json classes = json::array();
  for (const auto& w : r.surviving_classes) classes.push_back(w.str());
  out["survivingClasses"] = classes;
  return out;
}

inline void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

inline json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  in >> j;
  return j;
}

/// FNV-1a hash of the canonical bundle serialization; keys the local
/// image cache.
inline std::uint64_t curve_hash(const LabelledQuartic& c) {
  std::string s = curve_to_json(c).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace quartic
