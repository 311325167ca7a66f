#pragma once

// Umbrella header: exact correlations of the binary sign hierarchy, the
// matrix/regular-sequence machinery, asymptotic means and exponent bounds,
// and the brute-force prefix oracle.

#include "tmcorr/asymptotics.hpp"
#include "tmcorr/b_matrices.hpp"
#include "tmcorr/matrix.hpp"
#include "tmcorr/memo_store.hpp"
#include "tmcorr/npoint.hpp"
#include "tmcorr/oracle.hpp"
#include "tmcorr/pair_correlation.hpp"
#include "tmcorr/rational.hpp"
#include "tmcorr/thue_morse.hpp"
#include "tmcorr/weighted.hpp"
