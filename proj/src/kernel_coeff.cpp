#include "fockcalc/kernel_coeff.hpp"

#include <stdexcept>

#include "json.hpp"

namespace fockcalc {

std::string kernel_to_json(const KernelCoeff& k) {
  nlohmann::json j;
  j["side_z"] = {{"d", k.side_z().d}, {"N", k.side_z().N}};
  j["side_w"] = {{"d", k.side_w().d}, {"N", k.side_w().N}};
  j["interp"] = k.interp() == KernelInterp::kernel ? "kernel" : "symbol";
  std::vector<double> re(k.size()), im(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    re[i] = k.values()[i].real();
    im[i] = k.values()[i].imag();
  }
  j["re"] = re;
  j["im"] = im;
  return j.dump();
}

KernelCoeff kernel_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  TruncationSpec sz(j.at("side_z").at("d").get<int>(), j.at("side_z").at("N").get<int>());
  TruncationSpec sw(j.at("side_w").at("d").get<int>(), j.at("side_w").at("N").get<int>());
  const std::string interp = j.at("interp").get<std::string>();
  KernelCoeff out(sz, sw,
                  interp == "kernel" ? KernelInterp::kernel : KernelInterp::symbol);
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != out.size() || im.size() != out.size())
    throw std::invalid_argument("kernel_from_json: payload length mismatch");
  for (std::size_t i = 0; i < out.size(); ++i) out.values()[i] = cplx{re[i], im[i]};
  return out;
}

}  // namespace fockcalc
