#pragma once

#include "kusuoka/chain.hpp"
#include "kusuoka/disk.hpp"
#include "kusuoka/dynamics.hpp"
#include "kusuoka/estimates.hpp"
#include "kusuoka/gasket.hpp"
#include "kusuoka/numeric.hpp"
#include "kusuoka/verify.hpp"
#include "kusuoka/version.hpp"
