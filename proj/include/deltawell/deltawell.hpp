#pragma once

#include "deltawell/commands.hpp"
#include "deltawell/core.hpp"
#include "deltawell/eigenfunction.hpp"
#include "deltawell/fd_oracle.hpp"
#include "deltawell/multidelta.hpp"
#include "deltawell/output.hpp"
#include "deltawell/quantization.hpp"
