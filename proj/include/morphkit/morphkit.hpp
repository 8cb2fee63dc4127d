#pragma once

#include "morphkit/analyzer.hpp"
#include "morphkit/compiler.hpp"
#include "morphkit/container.hpp"
#include "morphkit/dafsa.hpp"
#include "morphkit/dictionary.hpp"
#include "morphkit/error.hpp"
#include "morphkit/language.hpp"
#include "morphkit/lexicon.hpp"
#include "morphkit/parse.hpp"
#include "morphkit/probability.hpp"
#include "morphkit/tagset.hpp"
#include "morphkit/utf8.hpp"
