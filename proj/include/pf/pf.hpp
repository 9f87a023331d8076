#pragma once

#include "gauss_rational.hpp"
#include "hpoly.hpp"
#include "series.hpp"
#include "berkowitz.hpp"
#include "weierstrass.hpp"
#include "upoly.hpp"
#include "linalg.hpp"
#include "ratfunc.hpp"
#include "chart.hpp"
#include "homogeneous.hpp"
#include "npe.hpp"
#include "hensel.hpp"
#include "morphism.hpp"
#include "aj.hpp"
#include "rank.hpp"
#include "blowup.hpp"
#include "approx.hpp"
#include "parse.hpp"
