#pragma once

#include "lga/algorithms.hpp"
#include "lga/apply.hpp"
#include "lga/automaton.hpp"
#include "lga/errors.hpp"
#include "lga/factor_matcher.hpp"
#include "lga/fsa_format.hpp"
#include "lga/matcher_format.hpp"
#include "lga/oracle.hpp"
#include "lga/random_instance.hpp"
#include "lga/text_model.hpp"
