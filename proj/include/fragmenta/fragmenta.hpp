// Copyright 2026 The Fragmenta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include "fragmenta/acceptance.hpp"
#include "fragmenta/config.hpp"
#include "fragmenta/dynamics.hpp"
#include "fragmenta/encoding.hpp"
#include "fragmenta/fragmentation.hpp"
#include "fragmenta/gates.hpp"
#include "fragmenta/lattice.hpp"
#include "fragmenta/linalg.hpp"
#include "fragmenta/quadflip.hpp"
#include "fragmenta/report.hpp"
#include "fragmenta/syndrome.hpp"
