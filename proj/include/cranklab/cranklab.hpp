#pragma once

#include "cranklab/bigint.hpp"
#include "cranklab/congruence.hpp"
#include "cranklab/core.hpp"
#include "cranklab/crank_series_crt.hpp"
#include "cranklab/io.hpp"
#include "cranklab/number_theory.hpp"
#include "cranklab/partition_residues.hpp"
#include "cranklab/qseries.hpp"
#include "cranklab/tables.hpp"
