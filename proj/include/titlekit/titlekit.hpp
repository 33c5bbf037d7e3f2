#pragma once

#include "titlekit/error.hpp"
#include "titlekit/text.hpp"
#include "titlekit/core_model.hpp"
#include "titlekit/phrase_bank.hpp"
#include "titlekit/lexical.hpp"
#include "titlekit/title_parser.hpp"
#include "titlekit/headline_tagger.hpp"
#include "titlekit/classify.hpp"
#include "titlekit/title_composer.hpp"
#include "titlekit/corpus_stats.hpp"
#include "titlekit/chi_square.hpp"
#include "titlekit/survey_analysis.hpp"
#include "titlekit/synth.hpp"
