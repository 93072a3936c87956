#pragma once

#include "dalg/atlas.hpp"
#include "dalg/bigrat.hpp"
#include "dalg/classifiers.hpp"
#include "dalg/constant_search.hpp"
#include "dalg/integrate.hpp"
#include "dalg/linalg.hpp"
#include "dalg/operator.hpp"
#include "dalg/parse.hpp"
#include "dalg/partial_fractions.hpp"
#include "dalg/poly.hpp"
#include "dalg/rational_function.hpp"
#include "dalg/riccati.hpp"
#include "dalg/series.hpp"
#include "dalg/vector_field.hpp"
