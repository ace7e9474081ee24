#pragma once

#include "opk/cobar.hpp"
#include "opk/consequence.hpp"
#include "opk/modp.hpp"
#include "opk/polynomial.hpp"
#include "opk/positivity.hpp"
#include "opk/rational.hpp"
#include "opk/recurrence.hpp"
#include "opk/sequences.hpp"
#include "opk/series.hpp"
#include "opk/tree_polynomial.hpp"
#include "opk/trees.hpp"
