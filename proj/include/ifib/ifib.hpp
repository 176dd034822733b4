#pragma once

#include "appreal.hpp"
#include "cf.hpp"
#include "convergents.hpp"
#include "gauss.hpp"
#include "matrix.hpp"
#include "minors.hpp"
#include "poly.hpp"
#include "polyfam.hpp"
#include "rat.hpp"
#include "report.hpp"
#include "sequences.hpp"
#include "series.hpp"
#include "spectral.hpp"
#include "sturm.hpp"
#include "verify.hpp"
