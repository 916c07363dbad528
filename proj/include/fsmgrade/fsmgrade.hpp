#pragma once

#include "fsmgrade/alphabet.hpp"
#include "fsmgrade/automaton.hpp"
#include "fsmgrade/bank.hpp"
#include "fsmgrade/constructions.hpp"
#include "fsmgrade/counting.hpp"
#include "fsmgrade/equivalence.hpp"
#include "fsmgrade/error.hpp"
#include "fsmgrade/format.hpp"
#include "fsmgrade/grading.hpp"
#include "fsmgrade/regex.hpp"
#include "fsmgrade/report.hpp"
#include "fsmgrade/run.hpp"
#include "fsmgrade/service.hpp"
