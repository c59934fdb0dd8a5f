#pragma once

#include "errors.hpp"
#include "formula.hpp"
#include "parser.hpp"
#include "events.hpp"
#include "dnf.hpp"
#include "automaton.hpp"
#include "monitor.hpp"
#include "oracle.hpp"
#include "lasso.hpp"
#include "fuzz.hpp"
