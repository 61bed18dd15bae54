define(["./theme"], function(theme) {
  return { color: theme.primary };
});
