#pragma once

#include "qclock/classify.hpp"
#include "qclock/contraction.hpp"
#include "qclock/diffmod.hpp"
#include "qclock/io.hpp"
#include "qclock/path_vector.hpp"
#include "qclock/periodic.hpp"
#include "qclock/quiver.hpp"
#include "qclock/report.hpp"
