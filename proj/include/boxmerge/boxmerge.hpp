#pragma once

#include "boxmerge/box_merge.hpp"
#include "boxmerge/error.hpp"
#include "boxmerge/estimator.hpp"
#include "boxmerge/image_io.hpp"
#include "boxmerge/imaging.hpp"
#include "boxmerge/oracle.hpp"
#include "boxmerge/point_set.hpp"
#include "boxmerge/report.hpp"
