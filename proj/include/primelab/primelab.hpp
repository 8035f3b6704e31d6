// primelab.hpp
// Umbrella header.

#pragma once

#include "primelab/arith.hpp"
#include "primelab/cli.hpp"
#include "primelab/crt.hpp"
#include "primelab/density.hpp"
#include "primelab/exact_counts.hpp"
#include "primelab/goldbach.hpp"
#include "primelab/params.hpp"
#include "primelab/prime_cache.hpp"
#include "primelab/probes.hpp"
#include "primelab/report.hpp"
#include "primelab/reproduce.hpp"
#include "primelab/residue.hpp"
#include "primelab/schinzel.hpp"
#include "primelab/sieve.hpp"
