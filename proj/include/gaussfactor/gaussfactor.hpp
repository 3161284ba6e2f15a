#pragma once

#include "gaussfactor/numtheory.hpp"
#include "gaussfactor/gauss_sums.hpp"
#include "gaussfactor/closed_form.hpp"
#include "gaussfactor/decomposition.hpp"
#include "gaussfactor/factorizer.hpp"
#include "gaussfactor/nslit.hpp"
#include "gaussfactor/parallel.hpp"
#include "gaussfactor/verify.hpp"
