#pragma once

#include "decwave/config.hpp"
#include "decwave/dec.hpp"
#include "decwave/dual_metrics.hpp"
#include "decwave/error.hpp"
#include "decwave/media.hpp"
#include "decwave/mesh.hpp"
#include "decwave/mesh_generators.hpp"
#include "decwave/off_io.hpp"
#include "decwave/probe.hpp"
#include "decwave/simulation.hpp"
#include "decwave/solver.hpp"
#include "decwave/source.hpp"
#include "decwave/sparse_operator.hpp"
#include "decwave/vtk.hpp"
