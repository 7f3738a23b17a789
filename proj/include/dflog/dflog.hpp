#pragma once
// Umbrella header for the whole library.

#include "builtins.hpp"      // IWYU pragma: export
#include "cli_app.hpp"       // IWYU pragma: export
#include "condition.hpp"     // IWYU pragma: export
#include "core.hpp"          // IWYU pragma: export
#include "discipline.hpp"    // IWYU pragma: export
#include "engine.hpp"        // IWYU pragma: export
#include "errors.hpp"        // IWYU pragma: export
#include "generator.hpp"     // IWYU pragma: export
#include "harness.hpp"       // IWYU pragma: export
#include "logic.hpp"         // IWYU pragma: export
#include "logic_io.hpp"      // IWYU pragma: export
#include "theory_io.hpp"     // IWYU pragma: export
