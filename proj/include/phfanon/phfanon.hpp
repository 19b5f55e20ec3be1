#pragma once

#include "phfanon/access_structure.hpp"
#include "phfanon/anonymity.hpp"
#include "phfanon/combinatorics.hpp"
#include "phfanon/error.hpp"
#include "phfanon/general_scheme.hpp"
#include "phfanon/io.hpp"
#include "phfanon/phf.hpp"
#include "phfanon/rational.hpp"
#include "phfanon/report.hpp"
#include "phfanon/simulator.hpp"
