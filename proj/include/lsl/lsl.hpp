#pragma once

#include "lsl/construction.hpp"
#include "lsl/curvekit.hpp"
#include "lsl/dimension.hpp"
#include "lsl/gallery.hpp"
#include "lsl/interval_set.hpp"
#include "lsl/rangeset.hpp"
#include "lsl/smoothcheck.hpp"
