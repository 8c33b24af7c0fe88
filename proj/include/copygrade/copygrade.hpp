/* Copyright 2026 The copygrade Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Umbrella header.

#ifndef COPYGRADE_COPYGRADE_HPP_
#define COPYGRADE_COPYGRADE_HPP_

#include "copygrade/commands.hpp"
#include "copygrade/error.hpp"
#include "copygrade/genharness.hpp"
#include "copygrade/ingest.hpp"
#include "copygrade/lexicon.hpp"
#include "copygrade/metrics.hpp"
#include "copygrade/record.hpp"
#include "copygrade/report.hpp"
#include "copygrade/text_core.hpp"

#endif  // COPYGRADE_COPYGRADE_HPP_
