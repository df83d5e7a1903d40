#pragma once

#include "dsclust/affinity.hpp"
#include "dsclust/clustering.hpp"
#include "dsclust/dynamics.hpp"
#include "dsclust/error.hpp"
#include "dsclust/io.hpp"
#include "dsclust/oracle.hpp"
#include "dsclust/simplex.hpp"
