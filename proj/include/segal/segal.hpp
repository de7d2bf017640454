#pragma once

#include "segal/error.hpp"
#include "segal/delta.hpp"
#include "segal/delta_suite.hpp"
#include "segal/sset.hpp"
#include "segal/segal_condition.hpp"
#include "segal/cat.hpp"
#include "segal/bar.hpp"
#include "segal/smith.hpp"
#include "segal/homology.hpp"
#include "segal/io.hpp"
