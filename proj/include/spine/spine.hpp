#pragma once

// Umbrella header.

#include "spine/community.hpp"
#include "spine/components.hpp"
#include "spine/distances.hpp"
#include "spine/error.hpp"
#include "spine/evaluation.hpp"
#include "spine/filters.hpp"
#include "spine/graph.hpp"
#include "spine/io.hpp"
#include "spine/log.hpp"
#include "spine/multilevel.hpp"
#include "spine/properties.hpp"
#include "spine/serialize.hpp"
