#pragma once

// Umbrella header: movement-primitive learning and generation for pen
// trajectories, stroke segmentation, and the accuracy study harness.

#include "dmpkit/errors.hpp"
#include "dmpkit/generator.hpp"
#include "dmpkit/io.hpp"
#include "dmpkit/kernels.hpp"
#include "dmpkit/learner.hpp"
#include "dmpkit/letters.hpp"
#include "dmpkit/model.hpp"
#include "dmpkit/phase.hpp"
#include "dmpkit/segmentation.hpp"
#include "dmpkit/study.hpp"
#include "dmpkit/svg.hpp"
#include "dmpkit/trajectory.hpp"
