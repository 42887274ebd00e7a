#pragma once

#include "pskdiff/asymptotics.hpp"
#include "pskdiff/channel.hpp"
#include "pskdiff/montecarlo.hpp"
#include "pskdiff/numkit.hpp"
#include "pskdiff/receivers.hpp"
#include "pskdiff/threshold.hpp"
#include "pskdiff/types.hpp"
#include "pskdiff/version.hpp"
