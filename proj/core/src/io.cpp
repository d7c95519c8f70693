#include "hmf/io.hpp"

#include "hmf/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace hmf::io {

using nlohmann::json;

namespace {

json pair_of(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_of(const json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json character_json(const DirichletCharacter& chi) {
  return {{"modulus", chi.modulus}, {"exponents", chi.exponents}, {"generators", chi.generators}};
}

DirichletCharacter character_of(const json& j) {
  const int q = j.at("modulus").get<int>();
  DirichletCharacter chi = make_character(q, j.at("exponents").get<std::vector<int>>());
  if (j.contains("generators") && j["generators"].get<std::vector<long long>>() != chi.generators) {
    throw DomainError("character generators do not match the canonical choice mod " + std::to_string(q));
  }
  return chi;
}

std::string rational_text(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

json integer_matrix(const RationalMatrix& g) {
  return json::array({json::array({g.a.numerator(), g.b.numerator()}),
                      json::array({g.c.numerator(), g.d.numerator()})});
}

std::string fmt17(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

json metadata(const ResidualReport& rep) {
  json excluded = json::array();
  for (cplx s : rep.excluded) excluded.push_back(pair_of(s));
  return {{"level", rep.level},
          {"weight", rep.weight},
          {"upper_limit", rep.upper_limit},
          {"split_f", rep.split_f},
          {"split_g", rep.split_g},
          {"panel_nodes", rep.panel_nodes},
          {"node_count", rep.node_count},
          {"tail_bound", rep.tail_bound},
          {"truncation_bound", rep.truncation_bound},
          {"c_psi", pair_of(rep.c_psi)},
          {"excluded_poles", excluded},
          {"max_lambda_residual", rep.max_lambda()},
          {"max_omega_residual", rep.max_omega()}};
}

} // namespace

std::string character_to_json(const DirichletCharacter& chi) { return character_json(chi).dump(); }

DirichletCharacter character_from_json(const std::string& text) { return character_of(json::parse(text)); }

std::string form_to_json(const FormExpansion& F) {
  json cp = json::array(), cm = json::array();
  for (cplx z : F.c_plus) cp.push_back(pair_of(z));
  for (cplx z : F.c_minus) cm.push_back(pair_of(z));
  json j = {{"weight", F.weight},
            {"level", F.level},
            {"character", character_json(F.character)},
            {"alpha", F.alpha},
            {"n_max", F.n_max},
            {"c_plus", cp},
            {"c_minus_zero", pair_of(F.c_minus_zero)},
            {"c_minus", cm}};
  return j.dump(2) + "\n";
}

FormExpansion form_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("form JSON: ") + e.what());
  }
  try {
    FormExpansion F;
    F.weight = j.at("weight").get<int>();
    F.level = j.at("level").get<int>();
    F.character = character_of(j.at("character"));
    F.alpha = j.at("alpha").get<double>();
    F.n_max = j.at("n_max").get<int>();
    for (const auto& z : j.at("c_plus")) F.c_plus.push_back(complex_of(z));
    F.c_minus_zero = complex_of(j.at("c_minus_zero"));
    for (const auto& z : j.at("c_minus")) F.c_minus.push_back(complex_of(z));
    validate(F);
    return F;
  } catch (const json::exception& e) {
    throw DomainError(std::string("form JSON: ") + e.what());
  }
}

std::string qexpansion_to_json(const HolomorphicQExpansion& E) {
  json c = json::array();
  for (cplx z : E.coefficients) c.push_back(pair_of(z));
  return json{{"weight", E.weight}, {"level", E.level}, {"coefficients", c}}.dump(2) + "\n";
}

std::string cusps_to_json(int N, const std::vector<Cusp>& list) {
  json arr = json::array();
  for (const Cusp& rho : list) {
    arr.push_back({{"repr", rho.repr()},
                   {"width", rho.width},
                   {"kappa", boost::rational_cast<double>(rho.kappa)},
                   {"kappa_exact", rational_text(rho.kappa)},
                   {"scaling", integer_matrix(rho.scaling)}});
  }
  return json{{"N", N}, {"cusps", arr}}.dump(2) + "\n";
}

std::string residuals_to_csv(const ResidualReport& rep) {
  std::string out = "re_s,im_s,lambda_residual,omega_residual,tail_bound\n";
  for (std::size_t i = 0; i < rep.grid.size(); ++i) {
    out += fmt17(rep.grid[i].real()) + "," + fmt17(rep.grid[i].imag()) + "," + fmt17(rep.lambda_residuals[i]) +
           "," + fmt17(rep.omega_residuals[i]) + "," + fmt17(rep.tail_bound) + "\n";
  }
  return out;
}

std::string residuals_to_json(const ResidualReport& rep) {
  json rows = json::array();
  for (std::size_t i = 0; i < rep.grid.size(); ++i) {
    rows.push_back({{"s", pair_of(rep.grid[i])},
                    {"lambda_residual", rep.lambda_residuals[i]},
                    {"omega_residual", rep.omega_residuals[i]}});
  }
  return json{{"metadata", metadata(rep)}, {"residuals", rows}}.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write " + tmp);
    out << content;
    if (!out.flush()) throw DomainError("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw DomainError("cannot rename into " + path);
  }
}

void save_form(const std::string& path, const FormExpansion& F) { write_file_atomic(path, form_to_json(F)); }

FormExpansion load_form(const std::string& path) { return form_from_json(read_file(path)); }

} // namespace hmf::io
