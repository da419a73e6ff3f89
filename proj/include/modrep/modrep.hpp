#pragma once

#include "field.hpp"
#include "rng.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "perm.hpp"
#include "group.hpp"
#include "module.hpp"
#include "hom_core.hpp"
#include "projective.hpp"
#include "decompose.hpp"
#include "vertex.hpp"
#include "closure.hpp"
#include "io.hpp"
#include "bootstrap.hpp"
#include "reproduce.hpp"
