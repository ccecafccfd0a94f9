#ifndef FLEXECC_STANDARD_CURVES_HPP
#define FLEXECC_STANDARD_CURVES_HPP

// Built-in copies of data/curves/*.params. The test suite checks that the
// embedded text and the checked-in files are identical.

#include <string_view>

#include "flexecc/curve.hpp"

namespace flexecc {

inline constexpr std::string_view kB233ParamsText = R"params(# NIST B-233 (sect233r1), FIPS 186-4 D.1.3.2
field = B233
a = 1
b = 066647ede6c332c7f8c0923bb58213b333b20e9ce4281fe115f7d8f90ad
Gx = 0fac9dfcbac8313bb2139f1bb755fef65bc391f8b36f8f8eb7371fd558b
Gy = 1006a08a41903350678e58528bebf8a0beff867a7ca36716f7e01f81052
order = 1000000000000000000000000000013e974e72f8a6922031d2603cfe0d7
cofactor = 2
)params";

inline constexpr std::string_view kB283ParamsText = R"params(# NIST B-283 (sect283r1), FIPS 186-4 D.1.3.3
field = B283
a = 1
b = 27b680ac8b8596da5a4af8a19a0303fca97fd7645309fa2a581485af6263e313b79a2f5
Gx = 5f939258db7dd90e1934f8c70b0dfec2eed25b8557eac9c80e2e198f8cdbecd86b12053
Gy = 3676854fe24141cb98fe6d4b20d02b4516ff702350eddb0826779c813f0df45be8112f4
order = 3ffffffffffffffffffffffffffffffffffef90399660fc938a90165b042a7cefadb307
cofactor = 2
)params";

inline std::string_view standard_params_text(FieldId f) {
  return f == FieldId::B233 ? kB233ParamsText : kB283ParamsText;
}

/// NIST B-233 / B-283 domain parameters, parsed and validated (G on the
/// curve, order*G = infinity) on first use.
inline const CurveParams& standard_curve(FieldId f) {
  static const CurveParams b233 = [] {
    CurveParams c = parse_curve_params(kB233ParamsText);
    validate_curve(c);
    return c;
  }();
  static const CurveParams b283 = [] {
    CurveParams c = parse_curve_params(kB283ParamsText);
    validate_curve(c);
    return c;
  }();
  return f == FieldId::B233 ? b233 : b283;
}

}  // namespace flexecc

#endif  // FLEXECC_STANDARD_CURVES_HPP
