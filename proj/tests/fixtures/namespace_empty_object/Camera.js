define(['MathUtils'], function(MathUtils) {
  'use strict';

  function Camera(fov) {
    this.fov = MathUtils.radFromDeg(fov);
  }

  Camera.prototype.fovDegrees = function() {
    return MathUtils.degFromRad(this.fov);
  };

  return Camera;
});
