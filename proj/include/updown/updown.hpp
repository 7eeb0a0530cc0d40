#pragma once

#include "updown/axioms.hpp"
#include "updown/claims.hpp"
#include "updown/compare.hpp"
#include "updown/election.hpp"
#include "updown/errors.hpp"
#include "updown/fixtures.hpp"
#include "updown/generator.hpp"
#include "updown/json_io.hpp"
#include "updown/outcome.hpp"
#include "updown/pav.hpp"
#include "updown/phragmen.hpp"
#include "updown/rational.hpp"
#include "updown/sets.hpp"
#include "updown/tax_rules.hpp"
#include "updown/thiele.hpp"
