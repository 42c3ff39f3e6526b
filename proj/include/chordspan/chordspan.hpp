#pragma once

#include "chordspan/bounds.hpp"
#include "chordspan/chorded_cycle.hpp"
#include "chordspan/construction.hpp"
#include "chordspan/intmath.hpp"
#include "chordspan/io.hpp"
#include "chordspan/oracle.hpp"
