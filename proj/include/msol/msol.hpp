// Copyright 2026 The msol Authors
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
//
#pragma once

#include "msol/alphabet.hpp"
#include "msol/automata.hpp"
#include "msol/automaton_io.hpp"
#include "msol/compiler.hpp"
#include "msol/error.hpp"
#include "msol/formula.hpp"
#include "msol/formula_io.hpp"
#include "msol/fsa2mso.hpp"
#include "msol/interpreter.hpp"
#include "msol/qe_unary.hpp"
