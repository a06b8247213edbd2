// Copyright 2026 The lstrace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "lstrace/enumerate.hpp"
#include "lstrace/gate_dag.hpp"
#include "lstrace/json_io.hpp"
#include "lstrace/layout.hpp"
#include "lstrace/match.hpp"
#include "lstrace/oracle.hpp"
#include "lstrace/pipeline.hpp"
#include "lstrace/qasm.hpp"
#include "lstrace/reconstruct.hpp"
#include "lstrace/recover.hpp"
#include "lstrace/route.hpp"
#include "lstrace/synth.hpp"
#include "lstrace/trace.hpp"
