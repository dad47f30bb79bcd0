#pragma once

#include "qgauss/chain.hpp"
#include "qgauss/circle.hpp"
#include "qgauss/dg.hpp"
#include "qgauss/gram_report.hpp"
#include "qgauss/io.hpp"
#include "qgauss/macfarlane.hpp"
#include "qgauss/precision.hpp"
#include "qgauss/qnum.hpp"
#include "qgauss/quad.hpp"
#include "qgauss/weights.hpp"
