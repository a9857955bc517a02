#pragma once

#include "isobound/errors.hpp"
#include "isobound/graph.hpp"
#include "isobound/graph_spec.hpp"
#include "isobound/iso_profile.hpp"
#include "isobound/minorant.hpp"
#include "isobound/product_bound.hpp"
#include "isobound/closed_forms.hpp"
#include "isobound/verify_certify.hpp"
#include "isobound/io.hpp"
