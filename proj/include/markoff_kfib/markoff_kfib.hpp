#pragma once

#include "markoff_kfib/bigint.hpp"
#include "markoff_kfib/bounds.hpp"
#include "markoff_kfib/classifier.hpp"
#include "markoff_kfib/kfib.hpp"
#include "markoff_kfib/markoff.hpp"
#include "markoff_kfib/oracle.hpp"
#include "markoff_kfib/parallel.hpp"
#include "markoff_kfib/quad_field.hpp"
#include "markoff_kfib/verify.hpp"
