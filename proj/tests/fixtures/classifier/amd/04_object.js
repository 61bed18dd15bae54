define({
  color: "red",
  size: 12
});
