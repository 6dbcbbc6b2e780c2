#pragma once

#include "artin/dihedral.hpp"
#include "artin/error.hpp"
#include "artin/graph.hpp"
#include "artin/intersection.hpp"
#include "artin/kernel.hpp"
#include "artin/parabolic.hpp"
#include "artin/word.hpp"
#include "artin/word_problem.hpp"
