#ifndef FLEXECC_FLEXECC_HPP
#define FLEXECC_FLEXECC_HPP

#include "flexecc/bigint.hpp"
#include "flexecc/bitvec.hpp"
#include "flexecc/curve.hpp"
#include "flexecc/ecdsa.hpp"
#include "flexecc/error.hpp"
#include "flexecc/gf2m.hpp"
#include "flexecc/hcca.hpp"
#include "flexecc/karatsuba.hpp"
#include "flexecc/leakage.hpp"
#include "flexecc/standard_curves.hpp"
#include "flexecc/trace_io.hpp"

#endif  // FLEXECC_FLEXECC_HPP
