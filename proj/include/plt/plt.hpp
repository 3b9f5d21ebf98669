// Copyright 2026 The plt Authors.
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

#include "plt/audit.hpp"
#include "plt/bounds.hpp"
#include "plt/codes.hpp"
#include "plt/error.hpp"
#include "plt/field.hpp"
#include "plt/gpc_pia.hpp"
#include "plt/grs.hpp"
#include "plt/matrix.hpp"
#include "plt/mds.hpp"
#include "plt/random.hpp"
#include "plt/replay.hpp"
#include "plt/worked_examples.hpp"
