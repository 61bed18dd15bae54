define([], function() {
  'use strict';

  var MathUtils = {
    DEG_TO_RAD: Math.PI / 180,
    radFromDeg: function(degrees) {
      return degrees * MathUtils.DEG_TO_RAD;
    },
    degFromRad: function(radians) {
      return radians / MathUtils.DEG_TO_RAD;
    }
  };

  return MathUtils;
});
