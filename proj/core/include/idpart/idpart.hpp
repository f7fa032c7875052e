#pragma once

#include "idpart/emergence.hpp"
#include "idpart/errors.hpp"
#include "idpart/exchange.hpp"
#include "idpart/fock.hpp"
#include "idpart/hilbert.hpp"
#include "idpart/interferometry.hpp"
#include "idpart/statistics.hpp"
