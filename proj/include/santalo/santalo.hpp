#pragma once

#include "santalo/bodies.hpp"
#include "santalo/cone.hpp"
#include "santalo/convex_polygon.hpp"
#include "santalo/ellipse.hpp"
#include "santalo/errors.hpp"
#include "santalo/cli.hpp"
#include "santalo/experiments.hpp"
#include "santalo/extremal_search.hpp"
#include "santalo/geometry.hpp"
#include "santalo/polygon_io.hpp"
#include "santalo/special_functions.hpp"
#include "santalo/symmetric_polygon.hpp"
#include "santalo/symmetrization.hpp"
