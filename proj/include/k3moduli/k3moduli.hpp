#ifndef K3MODULI_K3MODULI_HPP
#define K3MODULI_K3MODULI_HPP

#include "arith.hpp"
#include "classgroup.hpp"
#include "errors.hpp"
#include "k3.hpp"
#include "moduli.hpp"
#include "numerics.hpp"
#include "orders.hpp"
#include "qforms.hpp"

#endif
