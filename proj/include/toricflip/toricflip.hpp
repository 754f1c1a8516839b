#pragma once

#include "toricflip/error.hpp"
#include "toricflip/exact.hpp"
#include "toricflip/cone.hpp"
#include "toricflip/fan.hpp"
#include "toricflip/gkz.hpp"
#include "toricflip/divisor.hpp"
#include "toricflip/flip.hpp"
#include "toricflip/section.hpp"
#include "toricflip/io.hpp"
