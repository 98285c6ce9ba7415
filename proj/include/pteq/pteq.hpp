#pragma once

// Umbrella header.

#include <pteq/demo.hpp>
#include <pteq/designs.hpp>
#include <pteq/errors.hpp>
#include <pteq/gegenbauer.hpp>
#include <pteq/json_io.hpp>
#include <pteq/linalg.hpp>
#include <pteq/matrix.hpp>
#include <pteq/n2.hpp>
#include <pteq/pte.hpp>
#include <pteq/quadform.hpp>
#include <pteq/rational.hpp>
#include <pteq/report.hpp>
#include <pteq/sampling.hpp>
#include <pteq/search.hpp>
