#pragma once

#include "hmf/characters.hpp"
#include "hmf/forms.hpp"
#include "hmf/lseries.hpp"
#include "hmf/modgroup.hpp"

#include <string>
#include <vector>

namespace hmf::io {

// Doubles are written in shortest round-trip form, so read(write(F)) == F bit for bit.
std::string character_to_json(const DirichletCharacter& chi);
DirichletCharacter character_from_json(const std::string& text);

std::string form_to_json(const FormExpansion& F);
FormExpansion form_from_json(const std::string& text);

std::string qexpansion_to_json(const HolomorphicQExpansion& E);

std::string cusps_to_json(int N, const std::vector<Cusp>& list);

// columns re_s, im_s, lambda_residual, omega_residual, tail_bound
std::string residuals_to_csv(const ResidualReport& rep);
std::string residuals_to_json(const ResidualReport& rep);

std::string read_file(const std::string& path);
// Writes to a sibling temporary and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

void save_form(const std::string& path, const FormExpansion& F);
FormExpansion load_form(const std::string& path);

} // namespace hmf::io
