/**
 * @file crc.hpp
 * @brief Everything except the command-line front end.
 */
#pragma once

#include "crc/error.hpp"
#include "crc/scalar.hpp"
#include "crc/matrix.hpp"
#include "crc/tridiagonal.hpp"
#include "crc/spectral.hpp"
#include "crc/graph.hpp"
#include "crc/atlas.hpp"
#include "crc/code.hpp"
#include "crc/leonard.hpp"
#include "crc/analysis.hpp"
#include "crc/coset.hpp"
#include "crc/io.hpp"
