// Umbrella header.
#pragma once

#include "relsub/charset.hpp"
#include "relsub/grammar.hpp"
#include "relsub/grammar_io.hpp"
#include "relsub/harness.hpp"
#include "relsub/learner.hpp"
#include "relsub/relation.hpp"
#include "relsub/relation_spec.hpp"
#include "relsub/word.hpp"
