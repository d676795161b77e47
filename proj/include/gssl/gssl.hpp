#pragma once

#include "gssl/evaluation.hpp"
#include "gssl/graph.hpp"
#include "gssl/io.hpp"
#include "gssl/labels.hpp"
#include "gssl/matrix.hpp"
#include "gssl/random_walk.hpp"
#include "gssl/rng.hpp"
#include "gssl/ssl.hpp"
#include "gssl/sweep.hpp"
#include "gssl/synth.hpp"
