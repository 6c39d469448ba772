/*
   Copyright 2026 The nfsboot Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef NFSBOOT_NFSBOOT_HPP
#define NFSBOOT_NFSBOOT_HPP

#include "nfsboot/arith.hpp"
#include "nfsboot/bigint.hpp"
#include "nfsboot/boot.hpp"
#include "nfsboot/common.hpp"
#include "nfsboot/fields.hpp"
#include "nfsboot/io.hpp"
#include "nfsboot/lattice.hpp"
#include "nfsboot/polyselect.hpp"
#include "nfsboot/preimage.hpp"
#include "nfsboot/reference.hpp"
#include "nfsboot/smooth.hpp"

#endif  // NFSBOOT_NFSBOOT_HPP
