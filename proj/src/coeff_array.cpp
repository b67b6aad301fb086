#include "fockcalc/coeff_array.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace fockcalc {

std::string to_string(BasisTag tag) {
  return tag == BasisTag::hermite ? "hermite" : "fock";
}

BasisTag basis_tag_from_string(const std::string& s) {
  if (s == "hermite") return BasisTag::hermite;
  if (s == "fock") return BasisTag::fock;
  throw std::invalid_argument("unknown basis tag: " + s);
}

double CoeffArray::l2_norm() const {
  double s = 0.0;
  for (const cplx& v : values_) s += std::norm(v);
  return std::sqrt(s);
}

CoeffArray CoeffArray::delta(TruncationSpec trunc, BasisTag tag,
                             const MultiIndex& alpha) {
  CoeffArray c(trunc, tag);
  c.set(alpha, cplx{1.0, 0.0});
  return c;
}

CoeffArray coeff_add(const CoeffArray& a, const CoeffArray& b) {
  if (!(a.trunc() == b.trunc()))
    throw std::invalid_argument("coeff_add: truncation mismatch");
  if (a.basis() != b.basis())
    throw std::invalid_argument("coeff_add: basis mismatch");
  CoeffArray out(a.trunc(), a.basis());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
  return out;
}

CoeffArray coeff_scale(const CoeffArray& a, cplx s) {
  CoeffArray out(a.trunc(), a.basis());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = s * a[k];
  return out;
}

CoeffArray coeff_map(const CoeffArray& a,
                     const std::function<cplx(const MultiIndex&, cplx)>& f) {
  CoeffArray out(a.trunc(), a.basis());
  const auto idx = enumerate_indices(a.trunc());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = f(idx[k], a[k]);
  return out;
}

std::string coeff_to_json(const CoeffArray& a) {
  nlohmann::json j;
  j["d"] = a.trunc().d;
  j["N"] = a.trunc().N;
  j["basis"] = to_string(a.basis());
  std::vector<double> re(a.size()), im(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    re[k] = a[k].real();
    im[k] = a[k].imag();
  }
  j["re"] = re;
  j["im"] = im;
  return j.dump();
}

CoeffArray coeff_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  TruncationSpec trunc(j.at("d").get<int>(), j.at("N").get<int>());
  CoeffArray out(trunc, basis_tag_from_string(j.at("basis").get<std::string>()));
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != out.size() || im.size() != out.size())
    throw std::invalid_argument("coeff_from_json: payload length mismatch");
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = cplx{re[k], im[k]};
  return out;
}

}  // namespace fockcalc
