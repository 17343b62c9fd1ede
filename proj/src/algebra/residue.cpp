#include "fqdyn/residue.hpp"

#include "fqdyn/errors.hpp"

namespace fqdyn {

ResiduePtr ResidueField::make(PolyT mu) {
  if (mu.is_zero() || mu.is_constant()) throw DomainError("residue modulus must have positive degree");
  return ResiduePtr(new ResidueField(mu.monic()));
}

Residue::Residue(ResiduePtr ctx, const PolyT& v) : ctx_(std::move(ctx)), v_(v % ctx_->modulus()) {}

Residue Residue::inv() const {
  if (is_zero()) throw DomainError("inverse of zero residue");
  auto r = xgcd(v_, ctx_->modulus());
  if (!r.g.is_one()) throw DomainError("residue is not invertible; modulus is reducible");
  return Residue(ctx_, r.s);
}

}  // namespace fqdyn
