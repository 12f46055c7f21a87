#pragma once

#include "arith.hpp"
#include "canonical.hpp"
#include "config.hpp"
#include "enumerate.hpp"
#include "form.hpp"
#include "intmat.hpp"
#include "io.hpp"
#include "isolation.hpp"
#include "lattice.hpp"
#include "rational.hpp"
#include "represent.hpp"
#include "table1.hpp"
#include "theorems.hpp"
